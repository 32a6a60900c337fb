#include "spinstep/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinstep/error.hpp"

namespace spinstep {

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

Spinor4 incident_spinor(const StepProblem& p) {
  const double e = p.energy();
  const double m = p.mass();
  const double alpha = 1.0 / (e + m);
  const double p1 = p.incident_momentum();
  return p.incident_spin() == Spin::Up ? spin_up_spinor(alpha, e - m, p1)
                                       : spin_down_spinor(alpha, e - m, p1);
}

std::array<Spinor4, 2> reflected_spinors(const StepProblem& p) {
  const double e = p.energy();
  const double m = p.mass();
  const double alpha = 1.0 / (e + m);
  const double p1 = p.incident_momentum();
  return {spin_up_spinor(alpha, e - m, -p1), spin_down_spinor(alpha, e - m, -p1)};
}

void require_no_pole(const StepProblem& p) {
  if (p.branch() == Branch::Evanescent && p.near_mass_pole())
    throw Error(ErrorCode::MassPole,
                "mass pole: V0 - E - m = 0 makes rho = 1/(V0 - E - m) singular");
}

void require_finite(const AmplitudeSet& a) {
  for (const Complex& z : {a.reflected_up, a.reflected_down, a.transmitted_up, a.transmitted_down})
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
}

// Solves B u_r_up + B' u_r_down - X w0 - X' w1 = -u_inc.
Spinor4 solve_matching(const Spinor4& incident, const std::array<Spinor4, 2>& reflected,
                       const Spinor4& w0, const Spinor4& w1) {
  ComplexMatrix4 m;
  m.set_column(0, reflected[0]);
  m.set_column(1, reflected[1]);
  m.set_column(2, Complex{-1.0} * w0);
  m.set_column(3, Complex{-1.0} * w1);
  return solve_linear_4x4(m, Complex{-1.0} * incident);
}

// Flux ratio between region II and region I spin-resolved plane waves.
double transmission_flux_factor(const StepProblem& p) {
  const double e = p.energy();
  const double v0 = p.potential();
  const double m = p.mass();
  return (e + m) * std::sqrt(e - v0) / ((e - v0 + m) * std::sqrt(e));
}

}  // namespace

const char* to_string(Branch b) noexcept {
  return b == Branch::Propagating ? "propagating" : "evanescent";
}

StepProblem::StepProblem(double energy, double potential, double mass, Spin incident_spin)
    : energy_(energy), potential_(potential), mass_(mass), spin_(incident_spin) {
  if (!positive_finite(energy)) throw Error(ErrorCode::InvalidArgument, "energy E must be positive and finite");
  if (!positive_finite(potential)) throw Error(ErrorCode::InvalidArgument, "step height V0 must be positive and finite");
  if (!positive_finite(mass)) throw Error(ErrorCode::InvalidArgument, "mass m must be positive and finite");
  if (std::abs(energy - potential) <= kThresholdEps * potential)
    throw Error(ErrorCode::ThresholdDegeneracy,
                "threshold degeneracy: |E - V0| <= 1e-9 V0, transmitted momentum vanishes");
}

double StepProblem::incident_momentum() const { return std::sqrt(2.0 * energy_ * mass_); }

double StepProblem::transmitted_momentum() const {
  return std::sqrt(2.0 * mass_ * std::abs(energy_ - potential_));
}

bool StepProblem::near_mass_pole() const {
  return std::abs(potential_ - energy_ - mass_) <= kMassPoleRelTol * mass_;
}

RegionWavefunctions region_wavefunctions(const StepProblem& p) {
  require_no_pole(p);
  const double e = p.energy();
  const double v0 = p.potential();
  const double m = p.mass();
  const double p1 = p.incident_momentum();
  const double p2 = p.transmitted_momentum();

  RegionWavefunctions w;
  w.incident = {incident_spinor(p), p1, e, p.incident_spin(), Direction::PositiveZ};
  const auto refl = reflected_spinors(p);
  w.reflected[0] = {refl[0], -p1, e, Spin::Up, Direction::NegativeZ};
  w.reflected[1] = {refl[1], -p1, e, Spin::Down, Direction::NegativeZ};

  if (p.branch() == Branch::Propagating) {
    const double beta = 1.0 / (e - v0 + m);
    w.transmitted = {spin_up_spinor(beta, e - v0 - m, p2), spin_down_spinor(beta, e - v0 - m, p2)};
    w.transmitted_wavenumber = p2;
  } else {
    const double rho = 1.0 / (v0 - e - m);
    const Complex a = kI * (rho * (v0 - e + m));
    const Complex b = kI * (kSqrt2 * rho * p2);
    w.transmitted = {Spinor4{1.0, 0.0, a, b}, Spinor4{0.0, 1.0, -b, -a}};
    w.transmitted_wavenumber = kI * p2;
  }
  return w;
}

AmplitudeSet solve_amplitudes_linear(const StepProblem& p) {
  const RegionWavefunctions w = region_wavefunctions(p);
  const Spinor4 x = solve_matching(w.incident.spinor, {w.reflected[0].spinor, w.reflected[1].spinor},
                                   w.transmitted[0], w.transmitted[1]);
  AmplitudeSet a{p.branch(), x[0], x[1], x[2], x[3], Advisory::None, std::nullopt};
  require_finite(a);
  return a;
}

namespace {

// Columns 0 and 2 of (M + i p2' I): a basis of the decaying eigenspace that stays
// well conditioned across the mass pole.
std::array<Spinor4, 2> evanescent_basis(const StepProblem& p) {
  const double q = p.transmitted_momentum();
  const ComplexMatrix4 k = Complex{p.energy() - p.potential()} * eta(EtaRepresentation::Rep1) +
                           Complex{p.mass()} * eta_dagger(EtaRepresentation::Rep1) +
                           kI * q * ComplexMatrix4::identity();
  return {k.column(0), k.column(2)};
}

}  // namespace

AmplitudeSet solve_amplitudes_pole_free(const StepProblem& p) {
  if (p.branch() != Branch::Evanescent)
    throw Error(ErrorCode::InvalidArgument, "pole-free basis applies to E < V0 only");
  const auto [w0, w1] = evanescent_basis(p);
  const Spinor4 x = solve_matching(incident_spinor(p), reflected_spinors(p), w0, w1);
  const Spinor4 transmitted = x[2] * w0 + x[3] * w1;
  AmplitudeSet a{Branch::Evanescent, x[0], x[1], transmitted[0], transmitted[1], Advisory::None, transmitted};
  require_finite(a);
  return a;
}

AmplitudeSet closed_form_amplitudes(const StepProblem& p) {
  if (p.incident_spin() != Spin::Up)
    throw Error(ErrorCode::Unsupported, "closed-form amplitudes exist for spin-up incidence only");
  const double e = p.energy();
  const double v0 = p.potential();
  const double m = p.mass();

  AmplitudeSet a;
  a.branch = p.branch();
  if (a.branch == Branch::Propagating) {
    const double r = std::sqrt(e * (e - v0));
    const double den = (e + m) * (2.0 * e + 2.0 * r - v0);
    a.reflected_up = (-e + m) * v0 / den;
    a.transmitted_down = 2.0 * kI * std::sqrt(e * m) * v0 / den;
    a.reflected_down = a.transmitted_down;
    a.transmitted_up = (-2.0 * e * e - 2.0 * m * r + 2.0 * e * (m + r + v0)) / ((e + m) * v0);
    if (v0 < kSmallV0Floor * e) a.advisory = Advisory::CancellationRisk;
  } else {
    const double r = std::sqrt(e * (-e + v0));
    const Complex den_b = (e + m) * (2.0 * e - v0 + 2.0 * kI * r);
    const Complex den_bp = (e + m) * (-2.0 * kI * e + kI * v0 + 2.0 * r);
    a.reflected_up = (-e + m) * v0 / den_b;
    a.reflected_down = 2.0 * std::sqrt(e * m) * v0 / den_bp;
    a.transmitted_up =
        2.0 * (e * e + e * (m - v0) + kI * (m * r + std::sqrt(e * e * e * (-e + v0)))) / den_b;
    a.transmitted_down = 2.0 * std::sqrt(e * m) * v0 / den_bp;
  }
  require_finite(a);
  return a;
}

ScatteringCoefficients raw_coefficients(const StepProblem& p, const AmplitudeSet& amps) {
  if (amps.branch != p.branch())
    throw Error(ErrorCode::InvalidArgument, "amplitudes belong to a different energy branch");
  const bool up = p.incident_spin() == Spin::Up;
  const double keep_r = std::norm(up ? amps.reflected_up : amps.reflected_down);
  const double flip_r = std::norm(up ? amps.reflected_down : amps.reflected_up);

  ScatteringCoefficients c;
  c.branch = p.branch();
  c.r1 = keep_r;
  c.r2 = flip_r;
  if (c.branch == Branch::Propagating) {
    const double f = transmission_flux_factor(p);
    c.t1 = f * std::norm(up ? amps.transmitted_up : amps.transmitted_down);
    c.t2 = f * std::norm(up ? amps.transmitted_down : amps.transmitted_up);
  }
  return c;
}

ScatteringCoefficients coefficients(const StepProblem& p, const AmplitudeSet& amps) {
  ScatteringCoefficients c = raw_coefficients(p, amps);
  for (double* v : {&c.t1, &c.t2, &c.r1, &c.r2}) {
    if (!std::isfinite(*v) || *v < -kUnitarityTol || *v > 1.0 + kUnitarityTol)
      throw Error(ErrorCode::UnitarityViolation,
                  "probability outside [0, 1]: " + std::to_string(*v));
  }
  if (std::abs(c.sum() - 1.0) > kUnitarityTol)
    throw Error(ErrorCode::UnitarityViolation,
                "coefficient sum deviates from 1 by " + std::to_string(c.sum() - 1.0));
  for (double* v : {&c.t1, &c.t2, &c.r1, &c.r2}) *v = std::clamp(*v, 0.0, 1.0);
  return c;
}

QmReference qm_reference(double energy, double potential) {
  if (!positive_finite(potential) || !std::isfinite(energy) || !(energy > potential))
    throw Error(ErrorCode::InvalidArgument, "qm_reference requires E > V0 > 0");
  const double se = std::sqrt(energy);
  const double st = std::sqrt(energy - potential);
  const double sum = se + st;
  QmReference q;
  q.t = 4.0 * se * st / (sum * sum);
  const double ratio = (se - st) / sum;
  q.r = ratio * ratio;
  return q;
}

double CurrentDensities::conservation_sum() const {
  return (std::abs(j_refl_up) + std::abs(j_trans_up) + std::abs(j_refl_down) + std::abs(j_trans_down)) /
         std::abs(j_inc);
}

double current_density(const Spinor4& psi, EtaRepresentation rep) {
  const ComplexMatrix4 kernel = eta(rep) + eta_dagger(rep);
  return inner_product(psi, kernel * psi).real();
}

CurrentDensities currents(const StepProblem& p, const AmplitudeSet& amps) {
  if (amps.branch != p.branch())
    throw Error(ErrorCode::InvalidArgument, "amplitudes belong to a different energy branch");
  const auto refl = reflected_spinors(p);
  CurrentDensities j;
  j.j_inc = current_density(incident_spinor(p));
  j.j_refl_up = current_density(amps.reflected_up * refl[0]);
  j.j_refl_down = current_density(amps.reflected_down * refl[1]);
  if (p.branch() == Branch::Propagating) {
    const RegionWavefunctions w = region_wavefunctions(p);
    j.j_trans_up = current_density(amps.transmitted_up * w.transmitted[0]);
    j.j_trans_down = current_density(amps.transmitted_down * w.transmitted[1]);
  }
  return j;
}

CurrentDensities current_closed_forms(const StepProblem& p, const AmplitudeSet& amps) {
  const double e = p.energy();
  const double m = p.mass();
  const double v0 = p.potential();
  const double p1 = p.incident_momentum();
  CurrentDensities j;
  j.j_inc = 4.0 * p1 / (e + m);
  j.j_refl_up = -4.0 * p1 * std::norm(amps.reflected_up) / (e + m);
  j.j_refl_down = -4.0 * p1 * std::norm(amps.reflected_down) / (e + m);
  if (p.branch() == Branch::Propagating) {
    const double p2 = p.transmitted_momentum();
    j.j_trans_up = 4.0 * p2 * std::norm(amps.transmitted_up) / (e + m - v0);
    j.j_trans_down = 4.0 * p2 * std::norm(amps.transmitted_down) / (e + m - v0);
  }
  return j;
}

double continuity_residual_1d(const Spinor4& left, const Spinor4& right) {
  return (left - right).max_abs();
}

double continuity_residual(const StepProblem& p, const AmplitudeSet& amps) {
  const Spinor4 left = incident_spinor(p) + amps.reflected_up * reflected_spinors(p)[0] +
                       amps.reflected_down * reflected_spinors(p)[1];
  if (amps.transmitted_at_origin) return continuity_residual_1d(left, *amps.transmitted_at_origin);
  const RegionWavefunctions w = region_wavefunctions(p);
  const Spinor4 right = amps.transmitted_up * w.transmitted[0] + amps.transmitted_down * w.transmitted[1];
  return continuity_residual_1d(left, right);
}

namespace {

const EigenSpace& closest_space(const EigenSystem& sys, Complex target) {
  const EigenSpace* best = nullptr;
  for (const auto& s : sys.spaces)
    if (!best || std::abs(s.eigenvalue - target) < std::abs(best->eigenvalue - target)) best = &s;
  if (!best || best->basis.size() != 2)
    throw Error(ErrorCode::SingularMatrix, "expected a two-dimensional eigenspace");
  return *best;
}

}  // namespace

RepresentationExperiment representation_experiment(const StepProblem& p, EtaRepresentation rep) {
  const double e = p.energy();
  const double v0 = p.potential();
  const double m = p.mass();
  const double p1 = p.incident_momentum();
  const double p2 = p.transmitted_momentum();

  const EigenSystem region1 = numeric_eigensystem(momentum_operator(e, m, rep));
  const ComplexMatrix4 op2 = Complex{e - v0} * eta(rep) + Complex{m} * eta_dagger(rep);
  const EigenSystem region2 = numeric_eigensystem(op2);

  const EigenSpace& forward = closest_space(region1, p1);
  const EigenSpace& backward = closest_space(region1, -p1);
  const Complex k2 = p.branch() == Branch::Propagating ? Complex{p2} : kI * p2;
  const EigenSpace& transmitted = closest_space(region2, k2);

  const Spinor4& incident = forward.basis[0];
  const Spinor4 x = solve_matching(incident, {backward.basis[0], backward.basis[1]},
                                   transmitted.basis[0], transmitted.basis[1]);
  const Spinor4 reflected = x[0] * backward.basis[0] + x[1] * backward.basis[1];
  const Spinor4 outgoing = x[2] * transmitted.basis[0] + x[3] * transmitted.basis[1];

  const double j_inc = current_density(incident, rep);
  RepresentationExperiment r;
  r.rep = rep;
  r.branch = p.branch();
  r.reflection = -current_density(reflected, rep) / j_inc;
  r.transmission = current_density(outgoing, rep) / j_inc;
  if (p.branch() == Branch::Propagating) {
    const QmReference q = qm_reference(e, v0);
    r.reference_transmission = q.t;
    r.reference_reflection = q.r;
  } else {
    r.reference_transmission = 0.0;
    r.reference_reflection = 1.0;
  }
  r.max_deviation = std::max(std::abs(r.transmission - r.reference_transmission),
                             std::abs(r.reflection - r.reference_reflection));
  return r;
}

}  // namespace spinstep
