// Acceptance suite. Prints one PASS/FAIL line per criterion.
//   acceptance                 run all criteria, exit 1 if any fails
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spinstep/algebra.hpp"
#include "spinstep/eigensystem.hpp"
#include "spinstep/error.hpp"
#include "spinstep/scattering.hpp"
#include "spinstep/sweep_io.hpp"
#include "spinstep/threed.hpp"

using namespace spinstep;

namespace {

const double kMe = kElectronMassEv;
const double kPotentials[] = {100.0, 1e5, 1e6};

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a sub-check; failed ones are listed in the detail line.
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return out;
}

// 200 log-spaced points on (1 + 1e-4, 10].
std::vector<double> propagating_grid() {
  const double lo = 1.0 + 1e-4;
  std::vector<double> out;
  for (int i = 1; i <= 200; ++i) out.push_back(lo * std::pow(10.0 / lo, i / 200.0));
  return out;
}

// 200 log-spaced points on [1e-3, 1 - 1e-4).
std::vector<double> evanescent_grid() {
  const double hi = 1.0 - 1e-4;
  std::vector<double> out;
  for (int i = 0; i < 200; ++i) out.push_back(1e-3 * std::pow(hi / 1e-3, i / 200.0));
  return out;
}

double rel(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double rel(double a, double b) { return rel(Complex{a}, Complex{b}); }

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  double worst = 0.0;
  for (auto rep : {EtaRepresentation::Rep1, EtaRepresentation::Rep2}) {
    const AlgebraReport r = verify_eta_candidate(eta(rep), 1e-14);
    for (const auto& c : r.checks()) {
      worst = std::max(worst, c.max_deviation);
      o.require(c.pass, std::string(to_string(rep)) + " " + c.name + " = " + fmt("%.2e", c.max_deviation));
    }
    o.require(r.checks().size() == 7, "expected seven checks");
  }
  if (o.pass) o.detail = "max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac2() {
  Outcome o;
  double eig = 0.0, imag = 0.0, norm = 0.0, ortho = 0.0;
  for (double energy : log_grid(1.0, 1e7, 100)) {
    const double p = std::sqrt(2.0 * energy * kMe);
    const EigenSystem s = numeric_eigensystem(momentum_operator(energy, kMe));
    std::vector<double> re;
    for (const Complex& l : s.eigenvalues) {
      re.push_back(l.real());
      imag = std::max(imag, std::abs(l.imag()) / p);
    }
    std::sort(re.begin(), re.end());
    const double expected[4] = {-p, -p, p, p};
    for (int i = 0; i < 4; ++i) eig = std::max(eig, std::abs(re[i] - expected[i]) / p);

    Spinor4 u[4];
    for (int k = 0; k < 4; ++k) u[k] = analytic_eigenstate(k + 1, energy, kMe).spinor;
    for (int k = 0; k < 4; ++k) norm = std::max(norm, std::abs(inner_product(u[k], u[k]) - 2.0));
    ortho = std::max(ortho, std::abs(inner_product(u[0], u[1])));
    ortho = std::max(ortho, std::abs(inner_product(u[2], u[3])));
  }
  o.require(eig <= 1e-10, "eigenvalue deviation " + fmt("%.2e", eig));
  o.require(imag <= 1e-10, "imaginary part " + fmt("%.2e", imag));
  o.require(norm <= 1e-12, "normalization " + fmt("%.2e", norm));
  o.require(ortho <= 1e-12, "orthogonality " + fmt("%.2e", ortho));
  if (o.pass)
    o.detail = "eigenvalues " + fmt("%.1e", eig) + ", imag " + fmt("%.1e", imag) + ", u†u " + fmt("%.1e", norm);
  return o;
}

Outcome ac3() {
  Outcome o;
  double worst_amp = 0.0, worst_coef = 0.0;
  int compared = 0, skipped = 0;
  for (double v0 : kPotentials) {
    for (double x : propagating_grid()) {
      const StepProblem p(x * v0, v0);
      const AmplitudeSet cf = closed_form_amplitudes(p);
      if (cf.advisory == Advisory::CancellationRisk) {
        ++skipped;
        continue;
      }
      const AmplitudeSet lin = solve_amplitudes_linear(p);
      worst_amp = std::max({worst_amp, rel(lin.reflected_up, cf.reflected_up),
                            rel(lin.reflected_down, cf.reflected_down), rel(lin.transmitted_up, cf.transmitted_up),
                            rel(lin.transmitted_down, cf.transmitted_down)});
      const ScatteringCoefficients a = raw_coefficients(p, lin);
      const ScatteringCoefficients b = raw_coefficients(p, cf);
      worst_coef = std::max({worst_coef, rel(a.t1, b.t1), rel(a.t2, b.t2), rel(a.r1, b.r1), rel(a.r2, b.r2)});
      ++compared;
    }
  }
  o.require(compared == 600, std::to_string(compared) + " points compared");
  o.require(worst_amp <= 1e-9, "amplitude relative deviation " + fmt("%.2e", worst_amp));
  o.require(worst_coef <= 1e-9, "coefficient relative deviation " + fmt("%.2e", worst_coef));
  if (o.pass)
    o.detail = std::to_string(compared) + " points, amplitudes " + fmt("%.1e", worst_amp) + ", coefficients " +
               fmt("%.1e", worst_coef) + " relative";
  return o;
}

Outcome ac4() {
  Outcome o;
  double sum = 0.0, qm = 0.0, mass = 0.0;
  for (double v0 : kPotentials) {
    for (double x : propagating_grid()) {
      const double e = x * v0;
      const StepProblem p(e, v0);
      const ScatteringCoefficients c = coefficients(p, solve_amplitudes_linear(p));
      const QmReference q = qm_reference(e, v0);
      sum = std::max(sum, std::abs(c.sum() - 1.0));
      qm = std::max({qm, std::abs(c.transmission() - q.t), std::abs(c.reflection() - q.r)});

      const StepProblem heavy(e, v0, 2.0 * kMe);
      const ScatteringCoefficients h = coefficients(heavy, solve_amplitudes_linear(heavy));
      mass = std::max({mass, std::abs(h.transmission() - c.transmission()),
                       std::abs(h.reflection() - c.reflection())});
    }
  }
  o.require(sum <= 1e-12, "sum rule " + fmt("%.2e", sum));
  o.require(qm <= 1e-10, "spinless reduction " + fmt("%.2e", qm));
  o.require(mass <= 1e-10, "mass dependence " + fmt("%.2e", mass));
  if (o.pass)
    o.detail = "sum " + fmt("%.1e", sum) + ", T vs T_QM " + fmt("%.1e", qm) + ", m -> 2m " + fmt("%.1e", mass);
  return o;
}

Outcome ac5() {
  Outcome o;
  double formula = 0.0, sum = 0.0, height = 0.0;
  for (double v0 : kPotentials) {
    for (double x : evanescent_grid()) {
      const double e = x * v0;
      const StepProblem p(e, v0);
      const ScatteringCoefficients c = coefficients(p, solve_amplitudes_pole_free(p));
      const double den = (e + kMe) * (e + kMe);
      formula = std::max({formula, std::abs(c.r1 - (e - kMe) * (e - kMe) / den),
                          std::abs(c.r2 - 4.0 * e * kMe / den)});
      sum = std::max(sum, std::abs(c.sum() - 1.0));
      const StepProblem tall(e, 10.0 * v0);
      const ScatteringCoefficients t = coefficients(tall, solve_amplitudes_pole_free(tall));
      height = std::max({height, std::abs(t.r1 - c.r1), std::abs(t.r2 - c.r2)});
    }
  }
  // R2' must increase with E across (0, m); a step of 2m keeps every point below it.
  bool increasing = true;
  double previous = -1.0;
  for (double e : log_grid(1e-6 * kMe, (1.0 - 1e-6) * kMe, 400)) {
    const StepProblem p(e, 2.0 * kMe);
    const double r2 = coefficients(p, solve_amplitudes_pole_free(p)).r2;
    increasing = increasing && r2 > previous;
    previous = r2;
  }
  o.require(formula <= 1e-12, "R1'/R2' formulas " + fmt("%.2e", formula));
  o.require(sum <= 1e-12, "sum rule " + fmt("%.2e", sum));
  o.require(height <= 1e-12, "V0 -> 10 V0 " + fmt("%.2e", height));
  o.require(increasing, "R2' not increasing on (0, m)");
  if (o.pass)
    o.detail = "formulas " + fmt("%.1e", formula) + ", sum " + fmt("%.1e", sum) + ", V0 -> 10 V0 " +
               fmt("%.1e", height) + ", R2' increasing on (0, m)";
  return o;
}

struct GoldenGrid {
  const char* name;
  SweepSpec spec;
};

std::vector<GoldenGrid> golden_grids() {
  SweepSpec step_100ev;
  step_100ev.potential = 100.0;
  step_100ev.e_over_v0_min = 1.001;
  step_100ev.e_over_v0_max = 10.0;
  step_100ev.points = 500;
  step_100ev.regime = Regime::Propagating;
  SweepSpec step_100kev = step_100ev;
  step_100kev.potential = 1e5;
  SweepSpec step_1mev = step_100ev;
  step_1mev.potential = 1e6;
  step_1mev.e_over_v0_max = 3.0;
  step_1mev.points = 200;
  SweepSpec below_step;
  below_step.potential = 100.0;
  below_step.e_over_v0_min = 0.01;
  below_step.e_over_v0_max = 0.99;
  below_step.points = 100;
  below_step.regime = Regime::Evanescent;
  return {{"propagating_100ev", step_100ev}, {"propagating_100kev", step_100kev}, {"propagating_1mev", step_1mev},
          {"evanescent_100ev", below_step}};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac6() {
  Outcome o;
  const auto grids = golden_grids();

  const SweepResult step_100ev = run_sweep(grids[0].spec);
  bool spin_up_dominant = true;
  for (const auto& r : step_100ev.rows)
    if (r.e_over_v0 > 1.05) spin_up_dominant = spin_up_dominant && r.t1 > r.t2;
  o.require(spin_up_dominant, "V0 = 100 eV: T2 >= T1 somewhere above E/V0 = 1.05");

  const StepProblem at3(300.0, 100.0);
  const double t3 = coefficients(at3, solve_amplitudes_linear(at3)).transmission();
  o.require(t3 >= 0.9, "V0 = 100 eV: T(3 V0) = " + fmt("%.4f", t3));

  const SweepResult step_mev = run_sweep(grids[2].spec);
  int flipped = 0;
  double first_failure = 0.0;
  for (const auto& r : step_mev.rows) {
    if (r.r2 > r.r1)
      ++flipped;
    else if (first_failure == 0.0)
      first_failure = r.e_over_v0;
  }
  o.require(flipped == static_cast<int>(step_mev.rows.size()),
            "V0 = 1 MeV: R2 > R1 on " + std::to_string(flipped) + "/" + std::to_string(step_mev.rows.size()) +
                " rows, first R1 >= R2 at E/V0 = " + fmt("%.4f", first_failure));

  const std::filesystem::path golden_dir = SPINSTEP_GOLDEN_DIR;
  for (const auto& g : grids) {
    const std::string a = to_csv(run_sweep(g.spec).rows);
    const std::string b = to_csv(run_sweep(g.spec).rows);
    o.require(a == b, std::string(g.name) + " differs between runs");
    const std::string golden = slurp(golden_dir / (std::string(g.name) + ".csv"));
    o.require(!golden.empty(), std::string(g.name) + " golden missing");
    o.require(golden.empty() || golden == a, std::string(g.name) + " differs from golden");
  }
  if (o.pass) o.detail = "curve shapes hold, four golden CSVs byte-identical";
  return o;
}

Outcome ac7() {
  Outcome o;
  double ratio = 0.0, forms = 0.0;
  auto compare = [&](const CurrentDensities& a, const CurrentDensities& b) {
    forms = std::max({forms, rel(a.j_inc, b.j_inc), rel(a.j_refl_up, b.j_refl_up),
                      rel(a.j_refl_down, b.j_refl_down), rel(a.j_trans_up, b.j_trans_up),
                      rel(a.j_trans_down, b.j_trans_down)});
  };
  for (double v0 : kPotentials) {
    for (double x : propagating_grid()) {
      const StepProblem p(x * v0, v0);
      const AmplitudeSet a = solve_amplitudes_linear(p);
      const CurrentDensities j = currents(p, a);
      ratio = std::max(ratio, std::abs(j.conservation_sum() - 1.0));
      compare(j, current_closed_forms(p, a));
    }
    for (double x : evanescent_grid()) {
      const StepProblem p(x * v0, v0);
      const AmplitudeSet a = solve_amplitudes_pole_free(p);
      const CurrentDensities j = currents(p, a);
      ratio = std::max(ratio, std::abs(j.conservation_sum() - 1.0));
      compare(j, current_closed_forms(p, a));
    }
  }
  o.require(ratio <= 1e-12, "conservation ratio " + fmt("%.2e", ratio));
  o.require(forms <= 1e-12, "bilinear vs closed form " + fmt("%.2e", forms));
  if (o.pass) o.detail = "ratio sum " + fmt("%.1e", ratio) + ", bilinear vs closed form " + fmt("%.1e", forms);
  return o;
}

Outcome ac8() {
  Outcome o;
  double worst = 0.0;
  for (auto rep : {EtaRepresentation::Rep1, EtaRepresentation::Rep2}) {
    const AlgebraReport r = verify_continuity_identities(rep, 1e-14);
    for (const auto& c : r.checks()) {
      worst = std::max(worst, c.max_deviation);
      o.require(c.pass, std::string(to_string(rep)) + " " + c.name + " = " + fmt("%.2e", c.max_deviation));
    }
  }
  const AlgebraReport shell = shell_direction_test(EtaRepresentation::Rep1, 50);
  for (const auto& c : shell.checks()) o.require(c.pass, c.name + " = " + fmt("%.3g", c.max_deviation));
  if (o.pass) o.detail = "identities " + fmt("%.1e", worst) + ", shell test over 50 directions";
  else o.detail = "identities max " + fmt("%.1e", worst) + "; " + o.detail;
  return o;
}

Outcome ac9() {
  Outcome o;
  double linear = 0.0, pole_free = 0.0;
  int printed_basis_skipped = 0;
  for (double v0 : kPotentials) {
    for (Spin spin : {Spin::Up, Spin::Down}) {
      for (double x : propagating_grid()) {
        const StepProblem p(x * v0, v0, kMe, spin);
        linear = std::max(linear, continuity_residual(p, solve_amplitudes_linear(p)));
      }
      for (double x : evanescent_grid()) {
        const StepProblem p(x * v0, v0, kMe, spin);
        pole_free = std::max(pole_free, continuity_residual(p, solve_amplitudes_pole_free(p)));
        if (p.near_mass_pole()) {
          ++printed_basis_skipped;
          continue;
        }
        linear = std::max(linear, continuity_residual(p, solve_amplitudes_linear(p)));
      }
    }
  }
  o.require(linear <= 1e-11, "linear solve residual " + fmt("%.2e", linear));
  o.require(pole_free <= 1e-11, "pole-free solve residual " + fmt("%.2e", pole_free));
  if (o.pass)
    o.detail = "linear " + fmt("%.1e", linear) + ", pole-free " + fmt("%.1e", pole_free) + " (both spins, " +
               std::to_string(printed_basis_skipped) + " points on the mass pole)";
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
  double budget_s;  // 0 for no runtime bound
};

const Criterion kCriteria[] = {
    {"eta algebra, both representations, <= 1e-14", ac1, 1.0},
    {"eigenvalues +-sqrt(2Em) and eigenstate normalization over [1 eV, 10 MeV]", ac2, 1.0},
    {"linear solve vs closed forms within 1e-9 over 200 x 3", ac3, 5.0},
    {"sum rule 1e-12, T = T_QM 1e-10, mass independence 1e-10", ac4, 0.0},
    {"evanescent R1', R2' formulas, sum rule, barrier-height independence", ac5, 0.0},
    {"curve shapes and byte-stable golden CSVs", ac6, 0.0},
    {"current conservation and bilinear vs closed-form currents", ac7, 0.0},
    {"3D identities and on/off-shell determinant test", ac8, 1.0},
    {"continuity residual <= 1e-11 after every solve", ac9, 0.0},
};

bool run_one(int n) {
  const Criterion& c = kCriteria[n - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.budget_s > 0.0 && elapsed >= c.budget_s) o.require(false, "runtime " + fmt("%.2f s", elapsed) + " over budget");
  std::printf("AC%d %s  %s  [%s; %.3f s]\n", n, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), elapsed);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = static_cast<int>(std::size(kCriteria));
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > count) {
      std::fprintf(stderr, "criterion must be 1..%d\n", count);
      return 2;
    }
    return run_one(n) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= count; ++n) all = run_one(n) && all;
  return all ? 0 : 1;
}
