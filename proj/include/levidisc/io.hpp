#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "levidisc/discs.hpp"

namespace levidisc {

// Tolerance overrides a fixture may carry; defaults match the library.
struct FixtureTolerances {
  double rank_tol = kRankTol;
  double oracle_tol = 1e-8;
  double cluster_tol = 1e-6;
  double eps_positivity = 1e-6;
};

// A parsed problem instance: the form, optional disc parameters, and
// reproducibility knobs.
struct Fixture {
  LeviForm form;
  std::optional<CVector> lambda;
  std::optional<RVector> c;
  std::optional<CVector> w0;
  std::optional<RVector> y0;
  std::optional<CVector> v;
  std::uint64_t seed = 0;
  int fourier_n = 0;  // 0 = not specified
  FixtureTolerances tol;
};

Fixture parse_fixture(const nlohmann::json& j);
nlohmann::json fixture_to_json(const Fixture& f);
Fixture load_fixture(const std::string& path, std::string* digest_out = nullptr);

// A disc on disk: the rational data plus the parameters it was built for.
struct DiscFile {
  RationalDisc disc;
  LiftParams params;
};

nlohmann::json disc_to_json(const DiscFile& d);
DiscFile parse_disc(const nlohmann::json& j);
DiscFile load_disc(const std::string& path, std::string* digest_out = nullptr);

// Elementwise serializers shared by reports.
nlohmann::json complex_to_json(cdouble z);
nlohmann::json cvector_to_json(const CVector& v);
nlohmann::json rvector_to_json(const RVector& v);
nlohmann::json cmatrix_to_json(const CMatrix& a);
nlohmann::json defect_report_to_json(const DefectReport& r);

// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Boundary samples of z and w on the standard grid, one line per
// (theta, component): header "theta,component,re,im".
void write_boundary_csv(std::ostream& os, const RationalDisc& disc, int grid_n);

}  // namespace levidisc
