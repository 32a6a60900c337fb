#ifndef SPINSTEP_THREED_HPP
#define SPINSTEP_THREED_HPP

#include <array>
#include <cstdint>

#include "spinstep/algebra.hpp"

namespace spinstep {

struct MuTriple {
  std::array<ComplexMatrix4, 3> mu;

  const ComplexMatrix4& operator[](std::size_t i) const { return mu[i]; }
};

/// Block forms diag(s3, s3), antidiag(s2, s2), diag(s2, -s2).
MuTriple mu_block_forms();
/// i g1 g2, g0 g2, g2 g5 from the Dirac-basis gamma constructors.
MuTriple mu_gamma_products();

/// Throws Error(ConventionMismatch) when the two constructions differ by more than tol.
void check_mu_convention(const MuTriple& products, const MuTriple& blocks, double tol);

/// The block forms, after check_mu_convention(mu_gamma_products(), mu_block_forms(), 1e-15).
MuTriple mu_matrices();

struct ContinuityObjects {
  std::array<ComplexMatrix4, 3> sigma;  // i mu_i (eta + eta^dagger) gamma_3
  ComplexMatrix4 gamma_density;         // i eta^dagger eta gamma_3
};

ContinuityObjects continuity_objects(EtaRepresentation rep);

/// Hermiticity and {mu_i, mu_j} = 2 delta_ij I of the mu triple, the four relation
/// families used by the 3D continuity equation ([mu_i, g3] = 0, {mu_i, eta + eta^dagger} = 0,
/// [eta eta^dagger, g3] = 0, {eta + eta^dagger, g3} = 0), and Hermiticity of Sigma_i and Gamma.
AlgebraReport verify_continuity_identities(EtaRepresentation rep, double tol = kAlgebraTol);

struct Momentum3 {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  double norm_squared() const { return p1 * p1 + p2 * p2 + p3 * p3; }
};

/// mu_1 p1 + mu_2 p2 + mu_3 p3.
ComplexMatrix4 mu_dot(const Momentum3& p);

inline constexpr double kSingularDetTol = 1e-10;

struct ShellCheck {
  bool is_singular = false;
  double det_magnitude = 0.0;
  /// |det| divided by the product of the row norms.
  double normalized_det = 0.0;
};

/// Evaluates det(mu . p - E eta - m eta^dagger); singular when the normalized
/// determinant is at most kSingularDetTol.
ShellCheck schrodinger_reduction_check(double energy, double mass, const Momentum3& p,
                                       EtaRepresentation rep = EtaRepresentation::Rep1);

/// Shell test over random directions n with E log-uniform in [1 eV, 1 MeV] and m = m_e:
/// the operator must be singular at p = sqrt(2Em) n and regular at 1.1 times that.
/// Records the largest on-shell and smallest off-shell normalized determinant.
AlgebraReport shell_direction_test(EtaRepresentation rep, int directions = 50,
                                   std::uint64_t seed = 20240611);

/// (mu . p)^2 = |p|^2 I, and (E eta + m eta^dagger)^2 = 2 E m I, both relative to the
/// scale of the right-hand side.
AlgebraReport squared_operator_check(const Momentum3& p, double energy, double mass,
                                     EtaRepresentation rep = EtaRepresentation::Rep1,
                                     double tol = 1e-12);

}  // namespace spinstep

#endif  // SPINSTEP_THREED_HPP
