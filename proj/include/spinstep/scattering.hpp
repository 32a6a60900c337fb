#ifndef SPINSTEP_SCATTERING_HPP
#define SPINSTEP_SCATTERING_HPP

#include <array>
#include <optional>

#include "spinstep/algebra.hpp"
#include "spinstep/eigensystem.hpp"

namespace spinstep {

// Potential step V(z) = 0 for z < 0 and V0 for z > 0, incident from the left with A = 1.

enum class Branch { Propagating, Evanescent };

const char* to_string(Branch b) noexcept;

/// |E - V0| <= kThresholdEps * V0 is rejected: the transmitted momentum vanishes.
inline constexpr double kThresholdEps = 1e-9;
/// Below V0 / E = kSmallV0Floor the printed C/A is a 0/0 cancellation.
inline constexpr double kSmallV0Floor = 1e-6;
/// Evanescent inputs with |V0 - E - m| <= kMassPoleRelTol * m sit on the pole of
/// rho = 1 / (V0 - E - m) in the printed region-II spinors.
inline constexpr double kMassPoleRelTol = 1e-12;
/// Allowed excursion of a probability outside [0, 1] and of the sum rule away from 1.
inline constexpr double kUnitarityTol = 1e-12;

class StepProblem {
 public:
  /// Throws Error(InvalidArgument) unless E, V0, m are positive and finite, and
  /// Error(ThresholdDegeneracy) when |E - V0| <= kThresholdEps * V0.
  StepProblem(double energy, double potential, double mass = kElectronMassEv,
              Spin incident_spin = Spin::Up);

  double energy() const { return energy_; }
  double potential() const { return potential_; }
  double mass() const { return mass_; }
  Spin incident_spin() const { return spin_; }
  Branch branch() const { return energy_ > potential_ ? Branch::Propagating : Branch::Evanescent; }

  /// p1 = sqrt(2 E m).
  double incident_momentum() const;
  /// p2 = sqrt(2 (E - V0) m) when propagating, decay constant sqrt(2 m (V0 - E)) otherwise.
  double transmitted_momentum() const;
  bool near_mass_pole() const;

 private:
  double energy_;
  double potential_;
  double mass_;
  Spin spin_;
};

struct RegionWavefunctions {
  PlaneWaveState incident;
  std::array<PlaneWaveState, 2> reflected;  // spin up, spin down, moving along -z
  std::array<Spinor4, 2> transmitted;       // spin up, spin down
  // Eigenvalue of (E - V0) eta + m eta^dagger on the transmitted spinors: p2, or
  // i * p2' for the decaying branch (psi ~ exp(i k z) = exp(-p2' z)).
  Complex transmitted_wavenumber;
};

/// Throws Error(MassPole) for evanescent problems on the rho pole.
RegionWavefunctions region_wavefunctions(const StepProblem& p);

enum class Advisory { None, CancellationRisk };

struct AmplitudeSet {
  Branch branch = Branch::Propagating;
  Complex reflected_up;      // B / A
  Complex reflected_down;    // B' / A
  Complex transmitted_up;    // C / A, or D / A when evanescent
  Complex transmitted_down;  // C' / A, or D' / A
  Advisory advisory = Advisory::None;
  // psi_II(0) when the solver built it directly rather than from the printed spinors.
  std::optional<Spinor4> transmitted_at_origin;
};

/// Solves the z = 0 matching condition as a 4x4 linear system in (B, B', C, C') with
/// the region spinors as columns. Primary computation path.
AmplitudeSet solve_amplitudes_linear(const StepProblem& p);

/// Evanescent only. Same matching condition, but region II is spanned by two columns
/// of (M + i p2' I), M = (E - V0) eta + m eta^dagger, which stay independent across the
/// mass pole. D and D' are read off as the upper components of the transmitted
/// spinor, which is their printed normalization.
AmplitudeSet solve_amplitudes_pole_free(const StepProblem& p);

/// Printed closed-form amplitude ratios (spin-up incidence only). Flags
/// Advisory::CancellationRisk when V0 < kSmallV0Floor * E.
AmplitudeSet closed_form_amplitudes(const StepProblem& p);

/// Probabilities. Index 1 is the spin-preserving channel, 2 the spin-flip channel.
/// For the evanescent branch t1 = t2 = 0 and r1, r2 are the primed coefficients R1', R2'.
struct ScatteringCoefficients {
  Branch branch = Branch::Propagating;
  double t1 = 0.0;
  double t2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  double transmission() const { return t1 + t2; }
  double reflection() const { return r1 + r2; }
  double sum() const { return (t1 + t2) + (r1 + r2); }
};

/// Unvalidated coefficients from amplitudes.
ScatteringCoefficients raw_coefficients(const StepProblem& p, const AmplitudeSet& amps);

/// raw_coefficients, then checks each value lies in [-tol, 1 + tol] and the sum rule
/// holds within kUnitarityTol (Error(UnitarityViolation) otherwise), then clamps to [0, 1].
ScatteringCoefficients coefficients(const StepProblem& p, const AmplitudeSet& amps);

struct QmReference {
  double t = 0.0;
  double r = 0.0;
};

/// Spinless Schrodinger-equation step coefficients; requires E > V0 > 0.
QmReference qm_reference(double energy, double potential);

struct CurrentDensities {
  double j_inc = 0.0;
  double j_refl_up = 0.0;
  double j_refl_down = 0.0;
  double j_trans_up = 0.0;
  double j_trans_down = 0.0;

  /// (|J_r up| + |J_T up| + |J_r down| + |J_T down|) / |J_inc|.
  double conservation_sum() const;
};

/// psi^dagger (eta + eta^dagger) psi.
double current_density(const Spinor4& psi, EtaRepresentation rep = EtaRepresentation::Rep1);

/// Each current from the bilinear form on its plane-wave term. Evanescent transmitted
/// currents are zero.
CurrentDensities currents(const StepProblem& p, const AmplitudeSet& amps);

/// The printed closed forms 4 p |amp|^2 / (E + m) and 4 p2 |amp|^2 / (E + m - V0).
CurrentDensities current_closed_forms(const StepProblem& p, const AmplitudeSet& amps);

/// Largest component magnitude of left - right.
double continuity_residual_1d(const Spinor4& left, const Spinor4& right);

/// continuity_residual_1d of psi_I(0) + psi_I^r(0) against psi_II(0). Uses
/// amps.transmitted_at_origin when present; otherwise psi_II(0) is rebuilt from the printed
/// spinors, which lose digits to cancellation near the evanescent mass pole.
double continuity_residual(const StepProblem& p, const AmplitudeSet& amps);

/// Runs the matching problem under an arbitrary eta representation with every basis
/// taken from numeric eigenspaces, and compares the spin-summed, current-defined
/// transmission and reflection with the spinless reference (or with R = 1 below the step).
struct RepresentationExperiment {
  EtaRepresentation rep = EtaRepresentation::Rep1;
  Branch branch = Branch::Propagating;
  double transmission = 0.0;
  double reflection = 0.0;
  double reference_transmission = 0.0;
  double reference_reflection = 0.0;
  double max_deviation = 0.0;
};

RepresentationExperiment representation_experiment(const StepProblem& p, EtaRepresentation rep);

}  // namespace spinstep

#endif  // SPINSTEP_SCATTERING_HPP
