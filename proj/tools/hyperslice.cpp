// hyperslice: run verification suites and print the basis multiplication table.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hyperslice/suites.hpp"

namespace hs = hyperslice;

int main(int argc, char** argv) {
  CLI::App app{"Slice analysis over octonions and quaternions: verification suites and reports"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::string format = "text";
  bool timings = false;
  auto* run = app.add_subcommand("run", "Run a verification suite from a config file");
  run->add_option("--config", config_path, "INI experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--suite", suite, "Override the suite named in the config");
  run->add_option("--seed", seed, "Override the seed");
  run->add_option("--out", out, "Report path, '-' for stdout");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  run->add_flag("--timings", timings, "Write measured wall-clock times instead of 0");

  std::string algebra = "octonion";
  auto* table = app.add_subcommand("table", "Print the basis multiplication table");
  table->add_option("--algebra", algebra, "octonion or quaternion")
      ->check(CLI::IsMember({"octonion", "quaternion"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) {
      if (algebra == "quaternion") {
        hs::write_basis_table<4>(std::cout);
      } else {
        hs::write_basis_table<8>(std::cout);
      }
      return 0;
    }

    auto cfg = hs::load_config(config_path);
    if (suite) cfg.suite = hs::parse_suite(*suite);
    if (seed) cfg.seed = *seed;
    cfg.validate();
    const auto report = hs::run_suite(cfg);
    hs::emit_report(report, hs::parse_report_format(format), out, {timings});
    if (out != "-") hs::write_text(std::cerr, report, {timings});
    return report.pass() ? 0 : 1;
  } catch (const hs::Error& e) {
    std::cerr << "hyperslice: " << e.what() << '\n';
    return 2;
  }
}
