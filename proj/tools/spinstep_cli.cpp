#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinstep/spinstep.h"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// "2.5", "100ev", "100 keV", "1MeV" -> eV.
double parse_ev(const std::string& flag, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw UsageError(flag + ": '" + text + "' is not a number");
  std::string suffix = lower(end);
  suffix.erase(std::remove_if(suffix.begin(), suffix.end(), [](unsigned char c) { return std::isspace(c); }),
               suffix.end());
  double scale = 1.0;
  if (suffix.empty() || suffix == "ev")
    scale = 1.0;
  else if (suffix == "kev")
    scale = 1e3;
  else if (suffix == "mev")
    scale = 1e6;
  else
    throw UsageError(flag + ": unknown unit '" + suffix + "' (use ev, kev or mev)");
  const double ev = value * scale;
  if (!std::isfinite(ev)) throw UsageError(flag + ": value must be finite");
  return ev;
}

int exit_for(ss_status s) {
  switch (s) {
    case SS_OK: return kOk;
    case SS_ERR_INVALID_ARGUMENT:
    case SS_ERR_THRESHOLD_DEGENERACY:
    case SS_ERR_MASS_POLE:
    case SS_ERR_UNSUPPORTED: return kUsage;
    case SS_ERR_IO: return kIo;
    default: return kCheckFailed;
  }
}

int fail(ss_status s) {
  const std::string name = ss_status_name(s);
  const std::string message = ss_last_error();
  std::cerr << "error: " << (message.rfind(name, 0) == 0 ? message : name + ": " + message) << "\n";
  return exit_for(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ss_string_free(s);
  return out;
}

void print_pretty_object(const std::string& json) {
  const auto doc = nlohmann::ordered_json::parse(json);
  std::size_t width = 0;
  for (const auto& [k, v] : doc.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : doc.items()) {
    if (v.is_object()) {
      std::cout << k << ":\n";
      for (const auto& [k2, v2] : v.items()) std::cout << "  " << k2 << " = " << v2.dump() << "\n";
    } else {
      std::cout << k << std::string(width - k.size(), ' ') << " = "
                << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int emit_report(ss_report* report, bool pretty) {
  const bool ok = ss_report_passed(report) != 0;
  if (pretty) {
    const std::size_t n = ss_report_size(report);
    for (std::size_t i = 0; i < n; ++i) {
      const char* name = nullptr;
      double dev = 0.0;
      int pass = 0;
      ss_report_check(report, i, &name, &dev, &pass);
      std::printf("%s  %-70s %.3e\n", pass ? "PASS" : "FAIL", name, dev);
    }
    std::printf("%s (%zu checks)\n", ok ? "all checks passed" : "some checks FAILED", n);
  } else {
    char* json = nullptr;
    const ss_status s = ss_report_to_json(report, &json);
    if (s != SS_OK) {
      ss_report_free(report);
      return fail(s);
    }
    std::cout << take(json);
  }
  ss_report_free(report);
  return ok ? kOk : kCheckFailed;
}

ss_rep rep_from(const std::string& s) { return s == "rep2" ? SS_REP2 : SS_REP1; }
ss_spin spin_from(const std::string& s) { return s == "down" ? SS_SPIN_DOWN : SS_SPIN_UP; }

std::optional<ss_format> format_from_extension(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string ext = lower(path.substr(dot + 1));
  if (ext == "csv") return SS_FORMAT_CSV;
  if (ext == "json") return SS_FORMAT_JSON;
  if (ext == "svg") return SS_FORMAT_SVG;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-resolved step-potential scattering engine"};
  app.require_subcommand(1);

  const auto rep_check = CLI::IsMember({"rep1", "rep2"});
  const auto spin_check = CLI::IsMember({"up", "down"});

  std::string rep = "rep1";
  std::string spin = "up";
  std::string e_text, v0_text, m_text = "510998.95";
  bool pretty = false;

  auto* verify = app.add_subcommand("verify", "Run the algebra, eigensystem and 3D identity suites");
  double perturb = 0.0;
  verify->add_option("--rep", rep, "Eta representation")->check(rep_check);
  verify->add_option("--perturb-eta", perturb, "Add this value to eta entry (0,1) before checking");
  verify->add_flag("--pretty", pretty, "Human-readable table");

  auto add_point_flags = [&](CLI::App* cmd) {
    cmd->add_option("--e", e_text, "Incident energy (eV, or with ev/kev/mev suffix)")->required();
    cmd->add_option("--v0", v0_text, "Step height (eV, or with suffix)")->required();
    cmd->add_option("--m", m_text, "Particle mass (eV, or with suffix)")->capture_default_str();
    cmd->add_option("--spin", spin, "Incident spin")->check(spin_check);
    cmd->add_flag("--pretty", pretty, "Human-readable output");
  };
  auto* coeffs = app.add_subcommand("coefficients", "Transmission and reflection at one energy");
  add_point_flags(coeffs);
  coeffs->add_option("--rep", rep, "Eta representation")->check(rep_check);
  auto* curr = app.add_subcommand("currents", "Current densities at one energy");
  add_point_flags(curr);

  auto* sweep = app.add_subcommand("sweep", "Coefficients over an E/V0 grid");
  ss_sweep_spec spec;
  ss_sweep_spec_default(&spec);
  std::string sweep_v0 = "100", spacing = "log", regime = "auto", out_path, format, columns;
  sweep->add_option("--v0", sweep_v0, "Step height (eV, or with suffix)")->capture_default_str();
  sweep->add_option("--m", m_text, "Particle mass (eV, or with suffix)")->capture_default_str();
  sweep->add_option("--from", spec.e_over_v0_min, "Smallest E/V0")->capture_default_str();
  sweep->add_option("--to", spec.e_over_v0_max, "Largest E/V0")->capture_default_str();
  sweep->add_option("--points", spec.points, "Grid points")->capture_default_str();
  sweep->add_option("--spacing", spacing, "Grid spacing")->capture_default_str()->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--regime", regime, "Regime")->capture_default_str()
      ->check(CLI::IsMember({"propagating", "evanescent", "auto"}));
  sweep->add_option("--spin", spin, "Incident spin")->check(spin_check);
  sweep->add_option("--out", out_path, "Output file")->required();
  sweep->add_option("--format", format, "Output format (default: from the file extension, else csv)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  sweep->add_option("--columns", columns, "Comma-separated columns to plot (svg)");
  sweep->add_flag("--pretty", pretty, "Human-readable summary");

  auto* threed = app.add_subcommand("threed-check", "3D continuity identities and shell determinant test");
  int directions = 50;
  uint64_t seed = 20240611;
  threed->add_option("--rep", rep, "Eta representation")->check(rep_check);
  threed->add_option("--directions", directions, "Random directions for the shell test")->capture_default_str();
  threed->add_option("--seed", seed, "Seed for the random directions")->capture_default_str();
  threed->add_flag("--pretty", pretty, "Human-readable table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      ss_report* report = nullptr;
      const ss_status s = ss_verify(rep_from(rep), perturb, &report);
      if (s != SS_OK) return fail(s);
      return emit_report(report, pretty);
    }

    if (threed->parsed()) {
      ss_report* report = nullptr;
      const ss_status s = ss_threed_check(rep_from(rep), directions, seed, &report);
      if (s != SS_OK) return fail(s);
      return emit_report(report, pretty);
    }

    if (coeffs->parsed() || curr->parsed()) {
      const double e = parse_ev("--e", e_text);
      const double v0 = parse_ev("--v0", v0_text);
      const double m = parse_ev("--m", m_text);
      char* json = nullptr;
      const ss_status s = coeffs->parsed() ? ss_coefficients_json(e, v0, m, spin_from(spin), rep_from(rep), &json)
                                           : ss_currents_json(e, v0, m, spin_from(spin), &json);
      if (s != SS_OK) return fail(s);
      const std::string text = take(json);
      if (pretty)
        print_pretty_object(text);
      else
        std::cout << text;
      return kOk;
    }

    if (sweep->parsed()) {
      spec.potential = parse_ev("--v0", sweep_v0);
      spec.mass = parse_ev("--m", m_text);
      spec.spacing = spacing == "linear" ? SS_SPACING_LINEAR : SS_SPACING_LOG;
      spec.regime = regime == "propagating"  ? SS_REGIME_PROPAGATING
                    : regime == "evanescent" ? SS_REGIME_EVANESCENT
                                             : SS_REGIME_AUTO;
      spec.spin = spin_from(spin);
      ss_format fmt = SS_FORMAT_CSV;
      if (!format.empty())
        fmt = format == "json" ? SS_FORMAT_JSON : format == "svg" ? SS_FORMAT_SVG : SS_FORMAT_CSV;
      else if (auto guess = format_from_extension(out_path))
        fmt = *guess;
      if (!columns.empty() && fmt != SS_FORMAT_SVG) throw UsageError("--columns only applies to svg output");

      ss_sweep* result = nullptr;
      ss_status s = ss_sweep_run(&spec, &result);
      if (s != SS_OK) return fail(s);
      char* written = nullptr;
      s = ss_sweep_write(result, out_path.c_str(), fmt, columns.empty() ? nullptr : columns.c_str(), &written);
      const std::size_t rows = ss_sweep_row_count(result);
      const int skipped = ss_sweep_skipped(result);
      ss_sweep_free(result);
      if (s != SS_OK) return fail(s);

      nlohmann::json paths = nlohmann::json::array();
      std::istringstream lines(take(written));
      for (std::string line; std::getline(lines, line);) paths.push_back(line);
      if (pretty) {
        std::cout << rows << " rows, " << skipped << " skipped in the threshold band\n";
        for (const auto& p : paths) std::cout << "wrote " << p.get<std::string>() << "\n";
      } else {
        std::cout << nlohmann::json{{"rows", rows}, {"skipped_threshold", skipped}, {"written", paths}}.dump()
                  << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
