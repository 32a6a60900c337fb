#include "spinstep/threed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "spinstep/eigensystem.hpp"
#include "spinstep/error.hpp"

namespace spinstep {

MuTriple mu_block_forms() {
  const Matrix2 zero{};
  const Matrix2 s2 = pauli(2);
  const Matrix2 s3 = pauli(3);
  return {{ComplexMatrix4::from_blocks(s3, zero, zero, s3),
           ComplexMatrix4::from_blocks(zero, s2, s2, zero),
           ComplexMatrix4::from_blocks(s2, zero, zero, Complex{-1.0} * s2)}};
}

MuTriple mu_gamma_products() {
  return {{kI * (gamma(1) * gamma(2)), gamma(0) * gamma(2), gamma(2) * gamma(5)}};
}

void check_mu_convention(const MuTriple& products, const MuTriple& blocks, double tol) {
  for (std::size_t i = 0; i < 3; ++i) {
    const double dev = max_abs_diff(products[i], blocks[i]);
    if (!(dev <= tol))
      throw Error(ErrorCode::ConventionMismatch,
                  "mu_" + std::to_string(i + 1) + " gamma product differs from block form by " +
                      std::to_string(dev));
  }
}

MuTriple mu_matrices() {
  MuTriple blocks = mu_block_forms();
  check_mu_convention(mu_gamma_products(), blocks, 1e-15);
  return blocks;
}

ContinuityObjects continuity_objects(EtaRepresentation rep) {
  const MuTriple mu = mu_matrices();
  const ComplexMatrix4 e = eta(rep);
  const ComplexMatrix4 ed = eta_dagger(rep);
  const ComplexMatrix4 g3 = gamma(3);
  ContinuityObjects out;
  for (std::size_t i = 0; i < 3; ++i) out.sigma[i] = kI * (mu[i] * (e + ed) * g3);
  out.gamma_density = kI * (ed * e * g3);
  return out;
}

AlgebraReport verify_continuity_identities(EtaRepresentation rep, double tol) {
  const MuTriple mu = mu_matrices();
  const ComplexMatrix4 e = eta(rep);
  const ComplexMatrix4 ed = eta_dagger(rep);
  const ComplexMatrix4 kernel = e + ed;
  const ComplexMatrix4 g3 = gamma(3);
  const ComplexMatrix4 id = ComplexMatrix4::identity();

  AlgebraReport r;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string n = std::to_string(i + 1);
    r.add("mu" + n + "_hermitian", max_abs_diff(mu[i], mu[i].adjoint()), tol);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      const ComplexMatrix4 expected = i == j ? Complex{2.0} * id : ComplexMatrix4::zero();
      r.add("anticommutator_mu" + std::to_string(i + 1) + "_mu" + std::to_string(j + 1),
            max_abs_diff(anticommutator(mu[i], mu[j]), expected), tol);
    }
  for (std::size_t i = 0; i < 3; ++i)
    r.add("commutator_mu" + std::to_string(i + 1) + "_gamma3", commutator(mu[i], g3).max_abs(), tol);
  for (std::size_t i = 0; i < 3; ++i)
    r.add("anticommutator_mu" + std::to_string(i + 1) + "_eta_plus_eta_dagger",
          anticommutator(mu[i], kernel).max_abs(), tol);
  r.add("commutator_eta_eta_dagger_gamma3", commutator(e * ed, g3).max_abs(), tol);
  r.add("anticommutator_eta_plus_eta_dagger_gamma3", anticommutator(kernel, g3).max_abs(), tol);

  const ContinuityObjects c = continuity_objects(rep);
  for (std::size_t i = 0; i < 3; ++i)
    r.add("sigma" + std::to_string(i + 1) + "_hermitian",
          max_abs_diff(c.sigma[i], c.sigma[i].adjoint()), tol);
  r.add("gamma_density_hermitian", max_abs_diff(c.gamma_density, c.gamma_density.adjoint()), tol);
  return r;
}

ComplexMatrix4 mu_dot(const Momentum3& p) {
  const MuTriple mu = mu_matrices();
  return Complex{p.p1} * mu[0] + Complex{p.p2} * mu[1] + Complex{p.p3} * mu[2];
}

ShellCheck schrodinger_reduction_check(double energy, double mass, const Momentum3& p,
                                       EtaRepresentation rep) {
  if (!std::isfinite(p.p1) || !std::isfinite(p.p2) || !std::isfinite(p.p3))
    throw Error(ErrorCode::InvalidArgument, "momentum components must be finite");
  if (!(energy > 0.0)) throw Error(ErrorCode::InvalidArgument, "energy must be positive");
  const ComplexMatrix4 op = mu_dot(p) - momentum_operator(energy, mass, rep);
  ShellCheck s;
  s.det_magnitude = std::abs(op.det());
  double row_product = 1.0;
  for (std::size_t r = 0; r < 4; ++r) row_product *= op.row(r).norm();
  s.normalized_det = row_product > 0.0 ? s.det_magnitude / row_product : 0.0;
  s.is_singular = s.normalized_det <= kSingularDetTol;
  return s;
}

AlgebraReport shell_direction_test(EtaRepresentation rep, int directions, std::uint64_t seed) {
  if (directions < 1) throw Error(ErrorCode::InvalidArgument, "need at least one direction");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> log_energy(0.0, 6.0);
  double worst_on = 0.0;
  double worst_off = std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    double n[3];
    double len = 0.0;
    do {
      for (double& c : n) c = normal(rng);
      len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    } while (len < 1e-6);
    const double energy = std::pow(10.0, log_energy(rng));
    const double shell = std::sqrt(2.0 * energy * kElectronMassEv);
    auto at = [&](double scale) {
      const double s = scale * shell / len;
      return schrodinger_reduction_check(energy, kElectronMassEv, {s * n[0], s * n[1], s * n[2]}, rep);
    };
    worst_on = std::max(worst_on, at(1.0).normalized_det);
    worst_off = std::min(worst_off, at(1.1).normalized_det);
  }
  AlgebraReport r;
  r.record("on_shell_singular_max_normalized_det", worst_on, worst_on <= kSingularDetTol);
  r.record("off_shell_regular_min_normalized_det", worst_off, worst_off > kSingularDetTol);
  return r;
}

AlgebraReport squared_operator_check(const Momentum3& p, double energy, double mass,
                                     EtaRepresentation rep, double tol) {
  const ComplexMatrix4 id = ComplexMatrix4::identity();
  const ComplexMatrix4 pm = mu_dot(p);
  const double p2 = p.norm_squared();
  const ComplexMatrix4 op = momentum_operator(energy, mass, rep);
  const double two_em = 2.0 * energy * mass;

  AlgebraReport r;
  r.add("mu_dot_p_squared_eq_p2_identity",
        max_abs_diff(pm * pm, Complex{p2} * id) / std::max(p2, 1e-300), tol);
  r.add("momentum_operator_squared_eq_2Em_identity",
        max_abs_diff(op * op, Complex{two_em} * id) / std::max(two_em, 1e-300), tol);
  return r;
}

}  // namespace spinstep
