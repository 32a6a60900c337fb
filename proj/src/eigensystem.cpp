#include "spinstep/eigensystem.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinstep/error.hpp"

namespace spinstep {

namespace {

constexpr double kClusterRelTol = 1e-6;
constexpr double kNullRelTol = 1e-7;

Eigen::Matrix4cd to_eigen(const ComplexMatrix4& m) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return out;
}

void require_positive_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw Error(ErrorCode::InvalidArgument, "mass must be positive and finite");
}

}  // namespace

const char* to_string(Spin s) noexcept { return s == Spin::Up ? "up" : "down"; }

const char* to_string(Direction d) noexcept {
  return d == Direction::PositiveZ ? "positive_z" : "negative_z";
}

Spinor4 spin_up_spinor(double scale, double gap, double momentum) {
  return {1.0, 0.0, kI * (scale * gap), -std::sqrt(2.0) * scale * momentum};
}

Spinor4 spin_down_spinor(double scale, double gap, double momentum) {
  return {0.0, 1.0, std::sqrt(2.0) * scale * momentum, -kI * (scale * gap)};
}

ComplexMatrix4 momentum_operator(double energy, double mass, EtaRepresentation rep) {
  require_positive_mass(mass);
  if (!(energy >= 0.0) || !std::isfinite(energy))
    throw Error(ErrorCode::InvalidArgument, "energy must be non-negative and finite");
  return Complex{energy} * eta(rep) + Complex{mass} * eta_dagger(rep);
}

PlaneWaveState analytic_eigenstate(int kind, double energy, double mass) {
  require_positive_mass(mass);
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw Error(ErrorCode::InvalidArgument, "energy must be positive and finite");
  if (kind < 1 || kind > 4) throw Error(ErrorCode::InvalidArgument, "eigenstate kind must be 1..4");

  const double alpha = 1.0 / (energy + mass);
  const double pz = std::sqrt(2.0 * energy * mass);
  const bool forward = kind <= 2;
  const double p = forward ? pz : -pz;
  const bool up = kind % 2 == 1;

  PlaneWaveState s;
  s.spinor = up ? spin_up_spinor(alpha, energy - mass, p) : spin_down_spinor(alpha, energy - mass, p);
  s.momentum = p;
  s.energy = energy;
  s.spin = up ? Spin::Up : Spin::Down;
  s.direction = forward ? Direction::PositiveZ : Direction::NegativeZ;
  return s;
}

std::vector<std::pair<Complex, Spinor4>> EigenSystem::pairs() const {
  std::vector<std::pair<Complex, Spinor4>> out;
  for (const auto& space : spaces)
    for (const auto& v : space.basis) out.emplace_back(space.eigenvalue, v);
  return out;
}

EigenSystem numeric_eigensystem(const ComplexMatrix4& m) {
  if (!m.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  const Eigen::Matrix4cd a = to_eigen(m);
  const double scale = std::max(m.frobenius_norm(), std::numeric_limits<double>::min());

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::SingularMatrix, "eigenvalue iteration did not converge");

  EigenSystem out;
  std::array<Complex, 4> values{};
  for (int i = 0; i < 4; ++i) values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::sort(values.begin(), values.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  out.eigenvalues = values;

  // Group eigenvalues closer than kClusterRelTol * |M|; the cluster mean is the
  // representative (it averages out the split of a perturbed Jordan block).
  std::array<bool, 4> used{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (used[i]) continue;
    Complex sum = values[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!used[j] && std::abs(values[j] - values[i]) <= kClusterRelTol * scale) {
        used[j] = true;
        sum += values[j];
        ++count;
      }
    }
    EigenSpace space;
    space.eigenvalue = sum / static_cast<double>(count);
    space.algebraic_multiplicity = count;

    const Eigen::Matrix4cd shifted = a - space.eigenvalue * Eigen::Matrix4cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // descending
    int nullity = 0;
    for (int k = 3; k >= 0 && sv(k) <= kNullRelTol * scale; --k) ++nullity;
    nullity = std::min(nullity, count);
    if (nullity < count) out.defective = true;

    for (int k = 0; k < nullity; ++k) {
      const auto col = svd.matrixV().col(3 - k);
      Spinor4 v{col(0), col(1), col(2), col(3)};
      const double res = (m * v - space.eigenvalue * v).norm() / (scale * v.norm());
      out.max_residual = std::max(out.max_residual, res);
      space.basis.push_back(v);
    }
    out.spaces.push_back(std::move(space));
  }
  return out;
}

double projection_residual(const EigenSpace& space, const Spinor4& v) {
  Spinor4 rest = v;
  for (const auto& q : space.basis) rest -= inner_product(q, v) * q;
  return rest.norm() / v.norm();
}

}  // namespace spinstep
