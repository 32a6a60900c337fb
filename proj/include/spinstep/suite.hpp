#ifndef SPINSTEP_SUITE_HPP
#define SPINSTEP_SUITE_HPP

#include "spinstep/algebra.hpp"

namespace spinstep {

/// Every identity check the library can run for one representation, grouped as
/// "algebra.*", "eigensystem.*" and "threed.*". A nonzero eta_perturbation is added
/// to entry (0, 1) of eta before the algebra checks; it exists so callers can
/// confirm the suite fails on a corrupted matrix.
AlgebraReport verification_suite(EtaRepresentation rep, double eta_perturbation = 0.0);

}  // namespace spinstep

#endif  // SPINSTEP_SUITE_HPP
