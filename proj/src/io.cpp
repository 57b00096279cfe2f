#include "levidisc/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace levidisc {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + key + "'", path);
  return *it;
}

int parse_int(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ParseError("expected an integer", path);
  return j.get<int>();
}

double parse_double(const json& j, const std::string& path) {
  if (!j.is_number())
    throw ParseError("expected a number", path);
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("expected a finite number", path);
  return v;
}

cdouble parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("expected a complex number as [re, im]", path);
  return {parse_double(j[0], path + "/0"), parse_double(j[1], path + "/1")};
}

CVector parse_cvector(const json& j, int len, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != len)
    throw ParseError("expected an array of " + std::to_string(len) +
                         " complex numbers",
                     path);
  CVector v(len);
  for (int i = 0; i < len; ++i)
    v[i] = parse_complex(j[i], path + "/" + std::to_string(i));
  return v;
}

RVector parse_rvector(const json& j, int len, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != len)
    throw ParseError("expected an array of " + std::to_string(len) + " numbers",
                     path);
  RVector v(len);
  for (int i = 0; i < len; ++i)
    v[i] = parse_double(j[i], path + "/" + std::to_string(i));
  return v;
}

CMatrix parse_cmatrix(const json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ParseError("expected a matrix with " + std::to_string(rows) + " rows",
                     path);
  CMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[i];
    std::string rp = path + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("expected a row of " + std::to_string(cols) + " entries",
                       rp);
    for (int c = 0; c < cols; ++c)
      a(i, c) = parse_complex(row[c], rp + "/" + std::to_string(c));
  }
  return a;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError("unknown field '" + it.key() + "'", path);
  }
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Fixture parse_fixture(const json& j) {
  if (!j.is_object()) throw ParseError("fixture must be an object", "");
  reject_unknown(j, {"m", "k", "matrices", "params", "seed", "fourier_n",
                     "tolerances"},
                 "");
  Fixture f;
  int m = parse_int(require_field(j, "m", ""), "/m");
  int k = parse_int(require_field(j, "k", ""), "/k");
  if (m < 1) throw ParseError("m must be >= 1", "/m");
  if (k < 1) throw ParseError("k must be >= 1", "/k");

  const json& mats = require_field(j, "matrices", "");
  if (!mats.is_array() || static_cast<int>(mats.size()) != k)
    throw ParseError("expected " + std::to_string(k) + " matrices", "/matrices");
  std::vector<HermitianMatrix> hs;
  hs.reserve(k);
  for (int idx = 0; idx < k; ++idx) {
    std::string path = "/matrices/" + std::to_string(idx);
    CMatrix a = parse_cmatrix(mats[idx], m, m, path);
    double asym = HermitianMatrix::asymmetry(a);
    if (asym > 1e-12 * std::max(1.0, a.max_abs()))
      throw ParseError("matrix is not Hermitian (asymmetry " +
                           std::to_string(asym) + ")",
                       path);
    hs.push_back(HermitianMatrix::symmetrized(a));
  }
  f.form = make_levi_form(m, k, std::move(hs));

  if (auto it = j.find("params"); it != j.end()) {
    const json& p = *it;
    if (!p.is_object()) throw ParseError("params must be an object", "/params");
    reject_unknown(p, {"lambda", "c", "w0", "y0", "v"}, "/params");
    if (auto q = p.find("lambda"); q != p.end())
      f.lambda = parse_cvector(*q, k, "/params/lambda");
    if (auto q = p.find("c"); q != p.end())
      f.c = parse_rvector(*q, k, "/params/c");
    if (auto q = p.find("w0"); q != p.end())
      f.w0 = parse_cvector(*q, m, "/params/w0");
    if (auto q = p.find("y0"); q != p.end())
      f.y0 = parse_rvector(*q, k, "/params/y0");
    if (auto q = p.find("v"); q != p.end())
      f.v = parse_cvector(*q, m, "/params/v");
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      throw ParseError("seed must be an integer", "/seed");
    f.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("fourier_n"); it != j.end()) {
    int n = parse_int(*it, "/fourier_n");
    if (!is_pow2(n) || n < 16)
      throw ParseError("fourier_n must be a power of two >= 16", "/fourier_n");
    f.fourier_n = n;
  }
  if (auto it = j.find("tolerances"); it != j.end()) {
    const json& t = *it;
    if (!t.is_object())
      throw ParseError("tolerances must be an object", "/tolerances");
    reject_unknown(t, {"rank_tol", "oracle_tol", "cluster_tol", "eps_positivity"},
                   "/tolerances");
    auto field = [&](const char* name, double& slot) {
      if (auto q = t.find(name); q != t.end()) {
        double v = parse_double(*q, std::string("/tolerances/") + name);
        if (!(v > 0))
          throw ParseError("tolerance must be positive",
                           std::string("/tolerances/") + name);
        slot = v;
      }
    };
    field("rank_tol", f.tol.rank_tol);
    field("oracle_tol", f.tol.oracle_tol);
    field("cluster_tol", f.tol.cluster_tol);
    field("eps_positivity", f.tol.eps_positivity);
  }
  return f;
}

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json cvector_to_json(const CVector& v) {
  json a = json::array();
  for (const cdouble& z : v) a.push_back(complex_to_json(z));
  return a;
}

json rvector_to_json(const RVector& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json defect_report_to_json(const DefectReport& r) {
  json j;
  j["defective"] = r.defective;
  j["rank"] = r.rank;
  j["tol"] = r.tol;
  j["margin"] = r.margin;
  j["degenerate"] = r.degenerate;
  if (r.witness) j["witness"] = rvector_to_json(*r.witness);
  return j;
}

json fixture_to_json(const Fixture& f) {
  json j;
  j["m"] = f.form.m;
  j["k"] = f.form.k;
  json mats = json::array();
  for (const HermitianMatrix& a : f.form.matrices)
    mats.push_back(cmatrix_to_json(a.matrix()));
  j["matrices"] = mats;
  json params;
  if (f.lambda) params["lambda"] = cvector_to_json(*f.lambda);
  if (f.c) params["c"] = rvector_to_json(*f.c);
  if (f.w0) params["w0"] = cvector_to_json(*f.w0);
  if (f.y0) params["y0"] = rvector_to_json(*f.y0);
  if (f.v) params["v"] = cvector_to_json(*f.v);
  if (!params.is_null()) j["params"] = params;
  j["seed"] = f.seed;
  if (f.fourier_n) j["fourier_n"] = f.fourier_n;
  return j;
}

json disc_to_json(const DiscFile& d) {
  json j;
  j["version"] = "levi-disc/1";
  j["m"] = d.disc.dim_m();
  j["k"] = d.disc.dim_k();
  j["w0"] = cvector_to_json(d.disc.w0);
  j["M"] = cmatrix_to_json(d.disc.m);
  j["u"] = cvector_to_json(d.disc.u);
  json zc = json::array();
  for (const CVector& c : d.disc.z_coeffs) zc.push_back(cvector_to_json(c));
  j["z_coeffs"] = zc;
  j["fourier_n"] = d.disc.fourier_n;
  json p;
  p["lambda"] = cvector_to_json(d.params.lambda);
  p["c"] = rvector_to_json(d.params.c);
  j["params"] = p;
  return j;
}

DiscFile parse_disc(const json& j) {
  if (!j.is_object()) throw ParseError("disc must be an object", "");
  reject_unknown(j, {"version", "m", "k", "w0", "M", "u", "z_coeffs",
                     "fourier_n", "params"},
                 "");
  const json& ver = require_field(j, "version", "");
  if (!ver.is_string() || ver.get<std::string>() != "levi-disc/1")
    throw ParseError("unsupported disc version", "/version");
  int m = parse_int(require_field(j, "m", ""), "/m");
  int k = parse_int(require_field(j, "k", ""), "/k");
  if (m < 1) throw ParseError("m must be >= 1", "/m");
  if (k < 1) throw ParseError("k must be >= 1", "/k");
  DiscFile d;
  d.disc.w0 = parse_cvector(require_field(j, "w0", ""), m, "/w0");
  d.disc.m = parse_cmatrix(require_field(j, "M", ""), m, m, "/M");
  d.disc.u = parse_cvector(require_field(j, "u", ""), m, "/u");
  int n = parse_int(require_field(j, "fourier_n", ""), "/fourier_n");
  if (!is_pow2(n) || n < 16)
    throw ParseError("fourier_n must be a power of two >= 16", "/fourier_n");
  d.disc.fourier_n = n;
  const json& zc = require_field(j, "z_coeffs", "");
  if (!zc.is_array() || static_cast<int>(zc.size()) != k)
    throw ParseError("expected " + std::to_string(k) + " coefficient rows",
                     "/z_coeffs");
  d.disc.z_coeffs.resize(k);
  for (int i = 0; i < k; ++i)
    d.disc.z_coeffs[i] =
        parse_cvector(zc[i], n / 2, "/z_coeffs/" + std::to_string(i));
  const json& p = require_field(j, "params", "");
  if (!p.is_object()) throw ParseError("params must be an object", "/params");
  reject_unknown(p, {"lambda", "c"}, "/params");
  d.params.lambda = parse_cvector(require_field(p, "lambda", "/params"), k,
                                  "/params/lambda");
  d.params.c = parse_rvector(require_field(p, "c", "/params"), k, "/params/c");
  d.disc.rho_m = spectral_radius(d.disc.m);
  if (d.disc.rho_m < 1.0)
    d.disc.tail_bound =
        std::pow(d.disc.rho_m, n / 2) / (1.0 - d.disc.rho_m);
  return d;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof())
    throw ParseError("cannot read file '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open file for writing '" + path + "'");
  out << content;
  if (!out.good())
    throw ParseError("cannot write file '" + path + "'");
}

Fixture load_fixture(const std::string& path, std::string* digest_out) {
  std::string bytes = read_file(path);
  if (digest_out) *digest_out = fnv1a_hex(bytes);
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded())
    throw ParseError("invalid JSON in '" + path + "'");
  return parse_fixture(j);
}

DiscFile load_disc(const std::string& path, std::string* digest_out) {
  std::string bytes = read_file(path);
  if (digest_out) *digest_out = fnv1a_hex(bytes);
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded())
    throw ParseError("invalid JSON in '" + path + "'");
  return parse_disc(j);
}

void write_boundary_csv(std::ostream& os, const RationalDisc& disc, int grid_n) {
  os << "theta,component,re,im\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (int i = 0; i < grid_n; ++i) {
    double theta = 2.0 * 3.14159265358979323846 * i / grid_n;
    cdouble zeta = std::polar(1.0, theta);
    CVector z = disc.z_at(zeta);
    CVector w = disc.w_at(zeta);
    for (int j = 0; j < disc.dim_k(); ++j)
      os << num(theta) << ",z" << (j + 1) << "," << num(z[j].real()) << ","
         << num(z[j].imag()) << "\n";
    for (int s = 0; s < disc.dim_m(); ++s)
      os << num(theta) << ",w" << (s + 1) << "," << num(w[s].real()) << ","
         << num(w[s].imag()) << "\n";
  }
}

}  // namespace levidisc
