#pragma once

// Command-line front end:
//   catstate run <scenario-file> [--out P] [--format csv|json] [--epsilon E] [--dim N]
//   catstate run --preset fig1-even|fig1-odd|coherent [same overrides]
//   catstate validate <scenario-file>
//   catstate version
//
// Success prints the run manifest (JSON) on stdout. Failures print one line
// "error: kind=<k> [line=<l> field=<f>] message=<text>" on stderr.

#include "catstate/runner.hpp"
#include "catstate/scenario.hpp"
#include "catstate/version.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace catstate {

inline constexpr const char* scenario_schema_help = R"(Scenario documents are flat 'key = value' lines; '#' starts a comment.
Keys (all optional; omitted keys take the even-cat figure defaults):
  kind       coherent | cat_even | cat_odd | number      (default cat_even)
  alpha_re, alpha_im   complex alpha                      (exclusive with x0/p0)
  x0, p0     phase-space centre, natural units            (default 2^{3/2}, 0)
  n          number-state level                           (kind=number only)
  dim        auto | positive integer truncation           (default auto)
  epsilon    truncated probability tolerance              (default 1e-12)
  pad        extra levels above the tail rule             (default 8)
  x_min, x_max, x_points                                  (default -8, 8, 241)
  t_min, t_max, t_steps                                   (default 0, 2pi, 129)
  outputs    comma list of density_surface, observables_trace,
             photon_distribution, amplitudes              (default density_surface)
  format     csv | json                                   (default csv)
  out        output path prefix                           (default catstate)
)";

namespace detail {

inline std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Entry point behind the `catstate` executable. Returns the process exit
/// status: 0 on success, 1 on scenario/run errors, 2 on usage errors.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Coherent and cat states of the harmonic oscillator", "catstate"};
  app.require_subcommand(1);

  std::string run_file;
  std::string preset;
  std::optional<std::string> out_prefix;
  std::optional<std::string> format;
  std::optional<double> epsilon;
  std::optional<long long> dim;
  auto* run = app.add_subcommand("run", "Run a scenario file or a built-in preset");
  auto* file_opt = run->add_option("scenario", run_file, "Scenario document");
  auto* preset_opt = run->add_option("--preset", preset, "Built-in scenario")
                         ->check(CLI::IsMember({"fig1-even", "fig1-odd", "coherent"}));
  file_opt->excludes(preset_opt);
  run->add_option("--out", out_prefix, "Output path prefix");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--epsilon", epsilon, "Truncated probability tolerance (overrides epsilon)");
  run->add_option("--dim", dim, "Explicit truncation (overrides auto)");

  std::string validate_file;
  auto* val = app.add_subcommand("validate", "Check a scenario file without computing anything");
  val->add_option("scenario", validate_file, "Scenario document")->required();

  auto* ver = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << '\n' << scenario_schema_help;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: kind=usage message=" << detail::one_line(e.what()) << '\n'
        << app.help() << '\n'
        << scenario_schema_help;
    return 2;
  }

  try {
    if (ver->parsed()) {
      out << "catstate " << version_string << '\n';
      return 0;
    }

    if (val->parsed()) {
      const Scenario s = parse_scenario(detail::read_file(validate_file));
      out << "ok: " << validate_file << " (kind=" << to_string(s.kind)
          << ", dim=" << resolved_dimension(s) << ")\n";
      return 0;
    }

    if (run_file.empty() && preset.empty()) {
      err << "error: kind=usage message=run needs a scenario file or --preset\n"
          << run->help() << '\n'
          << scenario_schema_help;
      return 2;
    }
    Scenario s = preset.empty() ? parse_scenario(detail::read_file(run_file)) : preset_scenario(preset);
    if (out_prefix) {
      s.out_prefix = *out_prefix;
      s.key_lines["out"] = 0;
    }
    if (format) s.format = *format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (epsilon) {
      s.tol.norm = *epsilon;
      s.key_lines["epsilon"] = 0;
    }
    if (dim) {
      s.dim = *dim;
      s.key_lines["dim"] = 0;
    }
    validate(s);
    const RunManifest m = run_scenario(s);
    out << to_json(m).dump(2) << '\n';
    return 0;
  } catch (const ScenarioError& e) {
    err << "error: kind=scenario line=" << e.line() << " field=" << e.field()
        << " message=" << detail::one_line(e.message()) << '\n';
  } catch (const RunError& e) {
    err << "error: kind=run product=" << e.product() << " message=" << detail::one_line(e.what())
        << '\n';
  } catch (const std::exception& e) {
    err << "error: kind=runtime message=" << detail::one_line(e.what()) << '\n';
  }
  return 1;
}

}  // namespace catstate
