#include "spinstep/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spinstep/eigensystem.hpp"
#include "spinstep/error.hpp"
#include "spinstep/threed.hpp"

namespace spinstep {

namespace {

constexpr std::array<double, 6> kProbeEnergies = {1.0, 100.0, 1e4, 1e5, 1e6, 1e7};

AlgebraReport eigensystem_checks(EtaRepresentation rep) {
  const double m = kElectronMassEv;
  double eig_dev = 0.0;
  double imag_dev = 0.0;
  double norm_dev = 0.0;
  double ortho_dev = 0.0;
  double residual = 0.0;
  double span_dev = 0.0;

  for (double energy : kProbeEnergies) {
    const double p = std::sqrt(2.0 * energy * m);
    const ComplexMatrix4 op = momentum_operator(energy, m, rep);
    const EigenSystem sys = numeric_eigensystem(op);

    std::array<double, 4> re{};
    for (std::size_t i = 0; i < 4; ++i) {
      re[i] = sys.eigenvalues[i].real();
      imag_dev = std::max(imag_dev, std::abs(sys.eigenvalues[i].imag()) / p);
    }
    std::sort(re.begin(), re.end());
    const std::array<double, 4> expected = {-p, -p, p, p};
    for (std::size_t i = 0; i < 4; ++i) eig_dev = std::max(eig_dev, std::abs(re[i] - expected[i]) / p);

    if (rep != EtaRepresentation::Rep1) continue;
    std::array<PlaneWaveState, 4> u;
    for (int k = 1; k <= 4; ++k) u[static_cast<std::size_t>(k - 1)] = analytic_eigenstate(k, energy, m);
    const double scale = op.frobenius_norm();
    for (std::size_t i = 0; i < 4; ++i) {
      norm_dev = std::max(norm_dev, std::abs(inner_product(u[i].spinor, u[i].spinor) - 2.0));
      const Spinor4 r = op * u[i].spinor - Complex{u[i].momentum} * u[i].spinor;
      residual = std::max(residual, r.norm() / (scale * u[i].spinor.norm()));
      for (const auto& space : sys.spaces)
        if (std::abs(space.eigenvalue - Complex{u[i].momentum}) <= 1e-6 * p)
          span_dev = std::max(span_dev, projection_residual(space, u[i].spinor));
    }
    // Same-direction pairs are orthogonal; the eigenvalue-distinct pairs are not claimed to be.
    ortho_dev = std::max(ortho_dev, std::abs(inner_product(u[0].spinor, u[1].spinor)));
    ortho_dev = std::max(ortho_dev, std::abs(inner_product(u[2].spinor, u[3].spinor)));
  }

  AlgebraReport r;
  r.add("eigenvalues_eq_pm_sqrt_2Em", eig_dev, 1e-10);
  r.add("eigenvalue_imaginary_parts", imag_dev, 1e-10);
  if (rep == EtaRepresentation::Rep1) {
    r.add("analytic_normalization_eq_2", norm_dev, 1e-12);
    r.add("analytic_cross_orthogonality", ortho_dev, 1e-12);
    r.add("analytic_eigen_residual", residual, 1e-12);
    r.add("analytic_state_in_numeric_eigenspace", span_dev, 1e-9);
  }
  return r;
}

}  // namespace

AlgebraReport verification_suite(EtaRepresentation rep, double eta_perturbation) {
  if (!std::isfinite(eta_perturbation)) throw Error(ErrorCode::InvalidArgument, "perturbation must be finite");
  AlgebraReport report;
  if (eta_perturbation == 0.0) {
    report.append(verify_eta_algebra(rep, kAlgebraTol), "algebra");
  } else {
    ComplexMatrix4 corrupted = eta(rep);
    corrupted(0, 1) += eta_perturbation;
    report.append(verify_eta_candidate(corrupted, kAlgebraTol), "algebra");
  }
  report.append(eigensystem_checks(rep), "eigensystem");

  const MuTriple products = mu_gamma_products();
  const MuTriple blocks = mu_block_forms();
  AlgebraReport mu;
  for (std::size_t i = 0; i < 3; ++i)
    mu.add("mu" + std::to_string(i + 1) + "_gamma_product_eq_block_form", max_abs_diff(products[i], blocks[i]),
           1e-15);
  report.append(mu, "threed");
  report.append(verify_continuity_identities(rep), "threed");
  report.append(squared_operator_check({3.0e3, -4.0e3, 1.2e4}, 100.0, kElectronMassEv, rep), "threed");
  return report;
}

}  // namespace spinstep
