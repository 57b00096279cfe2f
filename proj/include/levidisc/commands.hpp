#pragma once

#include <string>

#include "levidisc/io.hpp"

namespace levidisc {

// Effective settings for one command invocation; unset optionals fall back
// to fixture values, then to library defaults.
struct CommandOptions {
  double tol = kRankTol;
  bool tol_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 0;  // 0 = command default
  int fourier_n = 0;
  std::string format = "json";
  bool lambda_zero = false;  // sweep: pin lambda to zero
  double shrink = 0.1;
  std::string emit_disc;  // find-pair: write the constructed disc here
  std::string csv;        // find-pair / check-disc: boundary samples here
};

struct Report {
  nlohmann::json body;
  int exit_code = 0;
};

Report cmd_classify(const std::string& fixture_path, const CommandOptions& opts);
Report cmd_find_pair(const std::string& fixture_path, const CommandOptions& opts);
Report cmd_check_disc(const std::string& fixture_path,
                      const std::string& disc_path, const CommandOptions& opts);
Report cmd_sweep(const std::string& fixture_path, const CommandOptions& opts);

// json: pretty-printed, keys sorted, trailing newline; text: indented
// key/value lines in the same order.  Both renderings are byte-deterministic
// for a given report.
std::string render_report(const Report& r, const std::string& format);

}  // namespace levidisc
