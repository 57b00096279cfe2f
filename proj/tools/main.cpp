#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levidisc/commands.hpp"
#include "levidisc/errors.hpp"
#include "levidisc/io.hpp"

using namespace levidisc;

int main(int argc, char** argv) {
  CLI::App app{
      "stationary discs attached to quadrics with vector-valued Levi form"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string fixture_path;
  std::string disc_path;
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("fixture", fixture_path, "fixture JSON file")->required();
    sub->add_option("--tol", opts.tol, "rank / zero tolerance");
    sub->add_option("--seed", opts.seed, "RNG seed (overrides the fixture)");
    sub->add_option("--samples", opts.samples, "sample / trial count");
    sub->add_option("--fourier-n", opts.fourier_n,
                    "Fourier grid size (power of two, >= 16)");
    sub->add_option("--out", out_path, "write the report to this file");
    sub->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* classify =
      app.add_subcommand("classify", "classify the Levi form of a quadric");
  add_common(classify);

  CLI::App* findpair = app.add_subcommand(
      "find-pair", "construct a nondefective stationary disc with its lift");
  add_common(findpair);
  findpair->add_option("--shrink", opts.shrink,
                       "norm bound for the disc direction v");
  findpair->add_option("--emit-disc", opts.emit_disc,
                       "write the constructed disc as JSON");
  findpair->add_option("--csv", opts.csv, "write boundary samples as CSV");

  CLI::App* checkdisc = app.add_subcommand(
      "check-disc", "verify a stored disc against a fixture");
  add_common(checkdisc);
  checkdisc->add_option("disc", disc_path, "disc JSON file")->required();
  checkdisc->add_option("--csv", opts.csv, "write boundary samples as CSV");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "defectiveness statistics over random admissible parameters");
  add_common(sweep);
  sweep->add_flag("--lambda-zero", opts.lambda_zero,
                  "use lambda = 0 in every trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  CLI::App* sub = app.get_subcommands().front();
  opts.tol_set = sub->count("--tol") > 0;
  opts.seed_set = sub->count("--seed") > 0;

  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  if (sub == classify)
    report = cmd_classify(fixture_path, opts);
  else if (sub == findpair)
    report = cmd_find_pair(fixture_path, opts);
  else if (sub == checkdisc)
    report = cmd_check_disc(fixture_path, disc_path, opts);
  else
    report = cmd_sweep(fixture_path, opts);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();

  try {
    const std::string text = render_report(report, opts.format);
    if (!out_path.empty())
      write_file(out_path, text);
    else
      std::cout << text;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  // Wall time goes to stderr so reports stay byte-identical across runs.
  std::fprintf(stderr, "elapsed_ms=%lld\n", static_cast<long long>(elapsed));
  return report.exit_code;
}
