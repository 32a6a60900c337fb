#ifndef SPINSTEP_EIGENSYSTEM_HPP
#define SPINSTEP_EIGENSYSTEM_HPP

#include <array>
#include <utility>
#include <vector>

#include "spinstep/algebra.hpp"

namespace spinstep {

// Natural units throughout: hbar = c = 1, energies, masses and momenta in eV.
inline constexpr double kElectronMassEv = 510998.95;

enum class Spin { Up, Down };
enum class Direction { PositiveZ, NegativeZ };

const char* to_string(Spin s) noexcept;
const char* to_string(Direction d) noexcept;

struct PhysicalParams {
  double energy = 0.0;
  double mass = kElectronMassEv;
  double potential = 0.0;

  double alpha() const { return 1.0 / (energy + mass); }
};

struct PlaneWaveState {
  Spinor4 spinor;
  double momentum = 0.0;  // signed, negative for NegativeZ
  double energy = 0.0;
  Spin spin = Spin::Up;
  Direction direction = Direction::PositiveZ;
};

// Spinor families shared by the free states and the step regions. With
// scale = 1/(E + m), gap = E - m and momentum = +-sqrt(2Em) these are the plane-wave
// eigenstates; the step problem substitutes E -> E - V0 in region II.
//   spin up:   (1, 0, i*scale*gap, -sqrt2*scale*momentum)
//   spin down: (0, 1, sqrt2*scale*momentum, -i*scale*gap)
Spinor4 spin_up_spinor(double scale, double gap, double momentum);
Spinor4 spin_down_spinor(double scale, double gap, double momentum);

/// E*eta + m*eta^dagger. Requires E >= 0 and m > 0.
ComplexMatrix4 momentum_operator(double energy, double mass,
                                 EtaRepresentation rep = EtaRepresentation::Rep1);

/// Plane-wave eigenstate u^(kind), kind in 1..4, of momentum_operator(E, m, Rep1).
/// Kinds 1 and 2 move along +z with spin up and down; 3 and 4 along -z.
PlaneWaveState analytic_eigenstate(int kind, double energy, double mass);

struct EigenSpace {
  Complex eigenvalue;
  int algebraic_multiplicity = 0;
  std::vector<Spinor4> basis;  // orthonormal
};

struct EigenSystem {
  std::array<Complex, 4> eigenvalues{};
  std::vector<EigenSpace> spaces;
  // Set when some eigenspace is smaller than its eigenvalue's multiplicity.
  bool defective = false;
  // max |M v - lambda v| / (|M| |v|) over the returned basis vectors.
  double max_residual = 0.0;

  std::vector<std::pair<Complex, Spinor4>> pairs() const;
};

/// Eigenvalues by Schur decomposition; eigenspaces by SVD null-space extraction
/// around each eigenvalue cluster.
EigenSystem numeric_eigensystem(const ComplexMatrix4& m);

/// |v - Q Q^dagger v| / |v| for the orthonormal basis Q of the space.
double projection_residual(const EigenSpace& space, const Spinor4& v);

}  // namespace spinstep

#endif  // SPINSTEP_EIGENSYSTEM_HPP
