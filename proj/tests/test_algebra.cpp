#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "spinstep/algebra.hpp"
#include "spinstep/error.hpp"

using namespace spinstep;
using Catch::Matchers::WithinAbs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool close(Complex a, Complex b, double tol = 1e-15) { return std::abs(a - b) <= tol; }

ComplexMatrix4 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = {u(rng), u(rng)};
  return m;
}

}  // namespace

TEST_CASE("eta entries match the two representations", "[algebra]") {
  const ComplexMatrix4 e1 = eta(EtaRepresentation::Rep1);
  CHECK(close(e1(0, 1), -kI * kInvSqrt2));
  CHECK(close(e1(0, 0), 0.0));
  CHECK(close(e1(0, 3), -kInvSqrt2));
  CHECK(close(e1(2, 1), kInvSqrt2));
  CHECK(close(eta(EtaRepresentation::Rep2)(0, 2), kI * kInvSqrt2));

  const ComplexMatrix4 ed = eta_dagger(EtaRepresentation::Rep1);
  CHECK(close(ed(0, 1), kI * kInvSqrt2));
  CHECK(close(ed(0, 3), -kInvSqrt2));
  CHECK(max_abs_diff(ed, e1.conjugate().transpose()) == 0.0);
  CHECK(max_abs_diff(ed, e1.conjugate()) == 0.0);
}

TEST_CASE("both representations satisfy the nilpotent pair relations", "[algebra]") {
  for (auto rep : {EtaRepresentation::Rep1, EtaRepresentation::Rep2}) {
    INFO(to_string(rep));
    const ComplexMatrix4 e = eta(rep);
    const ComplexMatrix4 ed = eta_dagger(rep);
    CHECK(e.is_nilpotent_order2(1e-15));
    CHECK(ed.is_nilpotent_order2(1e-15));
    CHECK(max_abs_diff(anticommutator(e, ed), Complex{2.0} * ComplexMatrix4::identity()) <= 1e-15);
    CHECK(e.is_symmetric(0.0));
    CHECK(std::abs(e.trace()) <= 1e-15);
    CHECK(std::abs(e.det()) <= 1e-15);
    const auto c = characteristic_coefficients(e);
    for (const Complex& ci : c) CHECK(std::abs(ci) <= 1e-15);

    const AlgebraReport r = verify_eta_algebra(rep, 1e-14);
    CHECK(r.passed());
    for (const auto& check : r.checks()) CHECK(check.max_deviation <= 1e-15);
  }
}

TEST_CASE("rep1 kernels take the upper-index gamma form", "[algebra]") {
  const AlgebraReport r = verify_eta_algebra(EtaRepresentation::Rep1, 1e-14);
  const AlgebraCheck* current = r.find("current_kernel_eq_minus_i_sqrt2_gamma2[upper_index]");
  const AlgebraCheck* density = r.find("density_kernel_eq_identity_plus_i_gamma3[upper_index]");
  REQUIRE(current);
  REQUIRE(density);
  CHECK(current->max_deviation <= 1e-15);
  CHECK(density->max_deviation <= 1e-15);

  const ComplexMatrix4 e = eta();
  const ComplexMatrix4 ed = eta_dagger();
  CHECK(max_abs_diff(e + ed, -kI * std::sqrt(2.0) * gamma(2)) <= 1e-15);
  CHECK(max_abs_diff(e + ed, -kI * std::sqrt(2.0) * gamma_lower(2)) > 1.0);
}

TEST_CASE("perturbing one eta entry is caught by the square check", "[algebra]") {
  ComplexMatrix4 m = eta();
  m(0, 1) += 1e-6;
  const AlgebraReport r = verify_eta_candidate(m, 1e-14);
  CHECK_FALSE(r.passed());
  const AlgebraCheck* sq = r.find("eta_squared_zero");
  REQUIRE(sq);
  CHECK_FALSE(sq->pass);
  CHECK(sq->max_deviation > 1e-7);
  CHECK(sq->max_deviation < 1e-5);
}

TEST_CASE("tolerance must be positive", "[algebra]") {
  CHECK_THROWS_AS(verify_eta_candidate(eta(), 0.0), Error);
  CHECK_THROWS_AS(verify_eta_algebra(EtaRepresentation::Rep1, -1.0), Error);
}

TEST_CASE("Dirac-basis gamma matrices", "[algebra]") {
  CHECK(max_abs_diff(gamma(0), ComplexMatrix4::diagonal(1, 1, -1, -1)) == 0.0);
  CHECK(close(gamma(5)(0, 2), 1.0));
  CHECK(max_abs_diff(gamma(5), kI * (gamma(0) * gamma(1) * gamma(2) * gamma(3))) <= 1e-15);
  const Matrix2 zero{};
  CHECK(max_abs_diff(kI * (gamma(1) * gamma(2)),
                     ComplexMatrix4::from_blocks(pauli(3), zero, zero, pauli(3))) <= 1e-15);

  // Clifford relations with metric diag(+, -, -, -).
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const double g = mu != nu ? 0.0 : (mu == 0 ? 2.0 : -2.0);
      CHECK(max_abs_diff(anticommutator(gamma(mu), gamma(nu)), Complex{g} * ComplexMatrix4::identity()) <= 1e-15);
    }
  CHECK_THROWS_AS(gamma(4), Error);
}

TEST_CASE("matrix kernel basics", "[algebra]") {
  const ComplexMatrix4 id = ComplexMatrix4::identity();
  const Spinor4 v{1.0, {0.0, 2.0}, -3.0, {4.0, -1.0}};
  const Spinor4 x = solve_linear_4x4(id, v);
  for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == v[i]);

  CHECK(max_abs_diff(anticommutator(eta(), eta_dagger()), Complex{2.0} * id) <= 1e-15);
  CHECK(std::abs(eta().det()) == 0.0);
  CHECK(std::abs(id.det() - 1.0) == 0.0);
  CHECK(commutator(id, eta()).is_zero(0.0));
  CHECK(gamma(0).is_hermitian(0.0));
  CHECK_FALSE(eta().is_hermitian(1e-3));

  // 1 + 4 + 9 + 17
  CHECK_THAT(v.norm(), WithinAbs(std::sqrt(31.0), 1e-15));
}

TEST_CASE("singular systems are rejected", "[algebra]") {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  m.set_column(3, m.column(0));
  CHECK_THROWS_AS(solve_linear_4x4(m, Spinor4{1, 0, 0, 0}), Error);
  try {
    solve_linear_4x4(eta(), Spinor4{1, 0, 0, 0});
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("solve round-trips random well-conditioned systems", "[algebra][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const ComplexMatrix4 m = random_matrix(rng) + Complex{4.0} * ComplexMatrix4::identity();
    const Spinor4 x{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const Spinor4 y = solve_linear_4x4(m, m * x);
    CHECK((y - x).norm() <= 1e-12 * x.norm());
  }
}

TEST_CASE("determinant and trace agree with the characteristic polynomial", "[algebra][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix4 m = random_matrix(rng);
    const auto c = characteristic_coefficients(m);
    CHECK(std::abs(c[0] - m.det()) <= 1e-12);
    CHECK(std::abs(c[3] + m.trace()) <= 1e-12);
    const ComplexMatrix4 n = random_matrix(rng);
    CHECK(std::abs((m * n).det() - m.det() * n.det()) <= 1e-12);
    CHECK(max_abs_diff((m * n).adjoint(), n.adjoint() * m.adjoint()) <= 1e-14);
  }
}

TEST_CASE("reports aggregate with prefixes", "[algebra]") {
  AlgebraReport a;
  CHECK_FALSE(a.passed());
  a.add("x", 0.5, 1.0);
  AlgebraReport b;
  b.append(a, "grp");
  REQUIRE(b.find("grp.x"));
  CHECK(b.passed());
  b.add("nan", std::nan(""), 1.0);
  CHECK_FALSE(b.passed());
  b.record("verdict", 3.0, true);
  CHECK(b.find("verdict")->pass);
}
