#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinstep/eigensystem.hpp"
#include "spinstep/error.hpp"

using namespace spinstep;

namespace {

std::vector<double> sorted_real(const EigenSystem& s) {
  std::vector<double> out;
  for (const Complex& l : s.eigenvalues) out.push_back(l.real());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return out;
}

}  // namespace

TEST_CASE("eigenvalues at E = m = 1", "[eigensystem]") {
  const EigenSystem s = numeric_eigensystem(momentum_operator(1.0, 1.0));
  const auto re = sorted_real(s);
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(re[0] + r2) <= 1e-10);
  CHECK(std::abs(re[1] + r2) <= 1e-10);
  CHECK(std::abs(re[2] - r2) <= 1e-10);
  CHECK(std::abs(re[3] - r2) <= 1e-10);
  REQUIRE(s.spaces.size() == 2);
  for (const auto& sp : s.spaces) {
    CHECK(sp.algebraic_multiplicity == 2);
    CHECK(sp.basis.size() == 2);
  }
  CHECK_FALSE(s.defective);
}

TEST_CASE("E = 0 leaves the nilpotent m eta^dagger", "[eigensystem]") {
  const ComplexMatrix4 op = momentum_operator(0.0, 3.0);
  CHECK(max_abs_diff(op, Complex{3.0} * eta_dagger()) == 0.0);
  const EigenSystem s = numeric_eigensystem(op);
  for (const Complex& l : s.eigenvalues) CHECK(std::abs(l) <= 1e-6);
  CHECK(s.defective);  // rank-2 nilpotent: a 2D null space for a fourfold zero
}

TEST_CASE("electron at 100 eV", "[eigensystem]") {
  const double p = std::sqrt(2.0 * 100.0 * kElectronMassEv);
  CHECK(std::abs(p - 10109.3912) < 1e-4);
  const auto re = sorted_real(numeric_eigensystem(momentum_operator(100.0, kElectronMassEv)));
  CHECK(std::abs(re[0] + p) <= 1e-10 * p);
  CHECK(std::abs(re[3] - p) <= 1e-10 * p);
}

TEST_CASE("identity and eta", "[eigensystem]") {
  const EigenSystem id = numeric_eigensystem(ComplexMatrix4::identity());
  for (const Complex& l : id.eigenvalues) CHECK(std::abs(l - 1.0) <= 1e-14);
  REQUIRE(id.spaces.size() == 1);
  CHECK(id.spaces[0].basis.size() == 4);

  const EigenSystem e = numeric_eigensystem(eta());
  for (const Complex& l : e.eigenvalues) CHECK(std::abs(l) <= 1e-7);
}

TEST_CASE("analytic eigenstates", "[eigensystem]") {
  const double energy = 250.0;
  const double m = kElectronMassEv;
  const double p = std::sqrt(2.0 * energy * m);
  const ComplexMatrix4 op = momentum_operator(energy, m);

  const PlaneWaveState u1 = analytic_eigenstate(1, energy, m);
  const PlaneWaveState u2 = analytic_eigenstate(2, energy, m);
  const PlaneWaveState u3 = analytic_eigenstate(3, energy, m);
  const PlaneWaveState u4 = analytic_eigenstate(4, energy, m);
  CHECK(u1.spin == Spin::Up);
  CHECK(u2.spin == Spin::Down);
  CHECK(u3.direction == Direction::NegativeZ);
  CHECK(u4.momentum == -p);

  CHECK(std::abs(inner_product(u1.spinor, u1.spinor) - 2.0) <= 1e-12);
  CHECK(std::abs(inner_product(u1.spinor, u2.spinor)) <= 1e-12);
  CHECK(std::abs(inner_product(u3.spinor, u4.spinor)) <= 1e-12);

  const Spinor4 r = op * u1.spinor - Complex{p} * u1.spinor;
  CHECK(r.norm() <= 1e-12 * p * u1.spinor.norm());

  // u3 is u1 with p -> -p, which only touches the last component.
  CHECK(u3.spinor[0] == u1.spinor[0]);
  CHECK(u3.spinor[2] == u1.spinor[2]);
  CHECK(u3.spinor[3] == -u1.spinor[3]);
  CHECK(u4.spinor[2] == -u2.spinor[2]);
  CHECK(u4.spinor[3] == u2.spinor[3]);

  CHECK_THROWS_AS(analytic_eigenstate(5, energy, m), Error);
  CHECK_THROWS_AS(analytic_eigenstate(1, -1.0, m), Error);
}

TEST_CASE("dispersion and normalization across eight decades", "[eigensystem][property]") {
  const double m = kElectronMassEv;
  for (double energy : log_grid(1.0, 1e7, 100)) {
    const double p = std::sqrt(2.0 * energy * m);
    const ComplexMatrix4 op = momentum_operator(energy, m);
    const EigenSystem s = numeric_eigensystem(op);
    const auto re = sorted_real(s);
    const double expected[4] = {-p, -p, p, p};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(re[i] - expected[i]) <= 1e-10 * p);
    for (const Complex& l : s.eigenvalues) CHECK(std::abs(l.imag()) <= 1e-10 * p);
    CHECK(s.max_residual <= 1e-10);

    for (int k = 1; k <= 4; ++k) {
      const PlaneWaveState u = analytic_eigenstate(k, energy, m);
      CHECK(std::abs(inner_product(u.spinor, u.spinor) - 2.0) <= 1e-12);
      CHECK(std::abs(u.momentum * u.momentum - 2.0 * energy * m) <= 1e-12 * 2.0 * energy * m);
      const EigenSpace* home = nullptr;
      for (const auto& sp : s.spaces)
        if (std::abs(sp.eigenvalue - Complex{u.momentum}) < 1e-6 * p) home = &sp;
      REQUIRE(home);
      CHECK(projection_residual(*home, u.spinor) <= 1e-9);
    }
  }
}

TEST_CASE("rep2 operator has the same spectrum", "[eigensystem]") {
  for (double energy : {1.0, 1e3, 1e6}) {
    const double p = std::sqrt(2.0 * energy * kElectronMassEv);
    const auto re = sorted_real(numeric_eigensystem(momentum_operator(energy, kElectronMassEv, EtaRepresentation::Rep2)));
    CHECK(std::abs(re[0] + p) <= 1e-10 * p);
    CHECK(std::abs(re[3] - p) <= 1e-10 * p);
  }
}

TEST_CASE("momentum operator domain", "[eigensystem]") {
  CHECK_THROWS_AS(momentum_operator(-1.0, 1.0), Error);
  CHECK_THROWS_AS(momentum_operator(1.0, 0.0), Error);
  CHECK_THROWS_AS(momentum_operator(std::nan(""), 1.0), Error);
}
