#include "spinstep/spinstep.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "spinstep/error.hpp"
#include "spinstep/scattering.hpp"
#include "spinstep/serialize.hpp"
#include "spinstep/suite.hpp"
#include "spinstep/sweep_io.hpp"
#include "spinstep/threed.hpp"

struct ss_report {
  spinstep::AlgebraReport report;
};

struct ss_sweep {
  spinstep::SweepResult result;
};

namespace {

using namespace spinstep;

thread_local std::string g_last_error;

ss_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SS_ERR_INVALID_ARGUMENT;
    case ErrorCode::SingularMatrix: return SS_ERR_SINGULAR_MATRIX;
    case ErrorCode::ThresholdDegeneracy: return SS_ERR_THRESHOLD_DEGENERACY;
    case ErrorCode::MassPole: return SS_ERR_MASS_POLE;
    case ErrorCode::UnitarityViolation: return SS_ERR_UNITARITY_VIOLATION;
    case ErrorCode::ConventionMismatch: return SS_ERR_CONVENTION_MISMATCH;
    case ErrorCode::Unsupported: return SS_ERR_UNSUPPORTED;
    case ErrorCode::Io: return SS_ERR_IO;
  }
  return SS_ERR_INTERNAL;
}

template <typename F>
ss_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return SS_ERR_INTERNAL;
}

ss_status null_argument(const char* what) {
  g_last_error = std::string(what) + " must not be null";
  return SS_ERR_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

EtaRepresentation rep_of(ss_rep r) {
  if (r == SS_REP1) return EtaRepresentation::Rep1;
  if (r == SS_REP2) return EtaRepresentation::Rep2;
  throw Error(ErrorCode::InvalidArgument, "unknown representation");
}

Spin spin_of(ss_spin s) {
  if (s == SS_SPIN_UP) return Spin::Up;
  if (s == SS_SPIN_DOWN) return Spin::Down;
  throw Error(ErrorCode::InvalidArgument, "unknown spin");
}

AmplitudeSet solve(const StepProblem& p) {
  return p.branch() == Branch::Propagating ? solve_amplitudes_linear(p) : solve_amplitudes_pole_free(p);
}

JsonObject header(const StepProblem& p) {
  JsonObject obj;
  obj.field("regime", to_string(p.branch()))
      .field("e_ev", p.energy())
      .field("v0_ev", p.potential())
      .field("m_ev", p.mass())
      .field("spin", to_string(p.incident_spin()));
  return obj;
}

std::vector<std::string> split_columns(const char* columns) {
  std::vector<std::string> out;
  if (!columns) return out;
  std::stringstream in(columns);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

const char* ss_last_error(void) { return g_last_error.c_str(); }

const char* ss_status_name(ss_status status) {
  switch (status) {
    case SS_OK: return "ok";
    case SS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SS_ERR_SINGULAR_MATRIX: return "singular matrix";
    case SS_ERR_THRESHOLD_DEGENERACY: return "threshold degeneracy";
    case SS_ERR_MASS_POLE: return "mass pole";
    case SS_ERR_UNITARITY_VIOLATION: return "unitarity violation";
    case SS_ERR_CONVENTION_MISMATCH: return "convention mismatch";
    case SS_ERR_UNSUPPORTED: return "unsupported";
    case SS_ERR_IO: return "i/o error";
    case SS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ss_string_free(char* s) { std::free(s); }

ss_status ss_verify(ss_rep rep, double eta_perturbation, ss_report** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ss_report{verification_suite(rep_of(rep), eta_perturbation)}; });
}

ss_status ss_threed_check(ss_rep rep, int directions, uint64_t seed, ss_report** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const EtaRepresentation r = rep_of(rep);
    AlgebraReport report;
    report.append(verify_continuity_identities(r), "identities");
    report.append(squared_operator_check({3.0e3, -4.0e3, 1.2e4}, 100.0, kElectronMassEv, r), "squared");
    report.append(shell_direction_test(r, directions, seed), "shell");
    *out = new ss_report{std::move(report)};
  });
}

int ss_report_passed(const ss_report* report) { return report && report->report.passed() ? 1 : 0; }

size_t ss_report_size(const ss_report* report) { return report ? report->report.checks().size() : 0; }

ss_status ss_report_check(const ss_report* report, size_t index, const char** name, double* max_deviation,
                          int* pass) {
  if (!report) return null_argument("report");
  const auto& checks = report->report.checks();
  if (index >= checks.size()) {
    g_last_error = "check index out of range";
    return SS_ERR_INVALID_ARGUMENT;
  }
  const AlgebraCheck& c = checks[index];
  if (name) *name = c.name.c_str();
  if (max_deviation) *max_deviation = c.max_deviation;
  if (pass) *pass = c.pass ? 1 : 0;
  g_last_error.clear();
  return SS_OK;
}

ss_status ss_report_to_json(const ss_report* report, char** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(to_json(report->report) + "\n"); });
}

void ss_report_free(ss_report* report) { delete report; }

ss_status ss_coefficients_json(double energy, double potential, double mass, ss_spin spin, ss_rep rep,
                               char** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const StepProblem p(energy, potential, mass, spin_of(spin));
    JsonObject obj = header(p);
    obj.field("rep", to_string(rep_of(rep)));
    if (rep_of(rep) == EtaRepresentation::Rep2) {
      const RepresentationExperiment x = representation_experiment(p, EtaRepresentation::Rep2);
      obj.field("transmission", x.transmission)
          .field("reflection", x.reflection)
          .field("reference_transmission", x.reference_transmission)
          .field("reference_reflection", x.reference_reflection)
          .field("max_deviation", x.max_deviation);
    } else {
      const AmplitudeSet amps = solve(p);
      append_fields(obj, coefficients(p, amps));
      if (p.branch() == Branch::Propagating) {
        const QmReference q = qm_reference(energy, potential);
        obj.field("t_qm", q.t).field("r_qm", q.r);
      }
      const CurrentDensities j = currents(p, amps);
      append_fields(obj, j);
      obj.field("current_conservation_sum", j.conservation_sum());
      obj.field("continuity_residual", continuity_residual(p, amps));
    }
    *out = duplicate(obj.str() + "\n");
  });
}

ss_status ss_currents_json(double energy, double potential, double mass, ss_spin spin, char** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const StepProblem p(energy, potential, mass, spin_of(spin));
    const AmplitudeSet amps = solve(p);
    const CurrentDensities bilinear = currents(p, amps);
    const CurrentDensities printed = current_closed_forms(p, amps);
    JsonObject b;
    append_fields(b, bilinear);
    JsonObject c;
    append_fields(c, printed);
    JsonObject obj = header(p);
    obj.raw("bilinear", b.str())
        .raw("closed_form", c.str())
        .field("conservation_sum", bilinear.conservation_sum());
    *out = duplicate(obj.str() + "\n");
  });
}

void ss_sweep_spec_default(ss_sweep_spec* spec) {
  if (!spec) return;
  const SweepSpec d;
  spec->potential = d.potential;
  spec->mass = d.mass;
  spec->e_over_v0_min = d.e_over_v0_min;
  spec->e_over_v0_max = d.e_over_v0_max;
  spec->points = d.points;
  spec->spacing = SS_SPACING_LOG;
  spec->regime = SS_REGIME_AUTO;
  spec->spin = SS_SPIN_UP;
}

ss_status ss_sweep_run(const ss_sweep_spec* spec, ss_sweep** out) {
  if (!spec) return null_argument("spec");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    SweepSpec s;
    s.potential = spec->potential;
    s.mass = spec->mass;
    s.e_over_v0_min = spec->e_over_v0_min;
    s.e_over_v0_max = spec->e_over_v0_max;
    s.points = spec->points;
    switch (spec->spacing) {
      case SS_SPACING_LINEAR: s.spacing = Spacing::Linear; break;
      case SS_SPACING_LOG: s.spacing = Spacing::Log; break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown spacing");
    }
    switch (spec->regime) {
      case SS_REGIME_PROPAGATING: s.regime = Regime::Propagating; break;
      case SS_REGIME_EVANESCENT: s.regime = Regime::Evanescent; break;
      case SS_REGIME_AUTO: s.regime = Regime::Auto; break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown regime");
    }
    s.incident_spin = spin_of(spec->spin);
    *out = new ss_sweep{run_sweep(s)};
  });
}

size_t ss_sweep_row_count(const ss_sweep* sweep) { return sweep ? sweep->result.rows.size() : 0; }

int ss_sweep_skipped(const ss_sweep* sweep) { return sweep ? sweep->result.skipped_threshold : 0; }

ss_status ss_sweep_row_at(const ss_sweep* sweep, size_t index, ss_sweep_row* out) {
  if (!sweep) return null_argument("sweep");
  if (!out) return null_argument("out");
  if (index >= sweep->result.rows.size()) {
    g_last_error = "row index out of range";
    return SS_ERR_INVALID_ARGUMENT;
  }
  const SweepRow& r = sweep->result.rows[index];
  *out = {r.branch == Branch::Evanescent ? 1 : 0, r.energy, r.e_over_v0, r.t1, r.t2, r.r1, r.r2,
          r.sum, r.t_qm, r.r_qm};
  g_last_error.clear();
  return SS_OK;
}

ss_status ss_sweep_write(const ss_sweep* sweep, const char* path, ss_format format, const char* columns,
                         char** written) {
  if (!sweep) return null_argument("sweep");
  if (!path) return null_argument("path");
  return guarded([&] {
    OutputFormat f;
    switch (format) {
      case SS_FORMAT_CSV: f = OutputFormat::Csv; break;
      case SS_FORMAT_JSON: f = OutputFormat::Json; break;
      case SS_FORMAT_SVG: f = OutputFormat::Svg; break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown output format");
    }
    std::string list;
    for (const auto& p : write_sweep(sweep->result, path, f, split_columns(columns)))
      list += p.string() + "\n";
    if (written) *written = duplicate(list);
  });
}

void ss_sweep_free(ss_sweep* sweep) { delete sweep; }

}  // extern "C"
