#include "spinstep/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "spinstep/error.hpp"

namespace spinstep {

// ---------------------------------------------------------------------------
// Spinor4

Spinor4& Spinor4::operator+=(const Spinor4& o) {
  for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

Spinor4& Spinor4::operator-=(const Spinor4& o) {
  for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

Spinor4& Spinor4::operator*=(Complex s) {
  for (auto& x : c_) x *= s;
  return *this;
}

double Spinor4::norm() const {
  double s = 0.0;
  for (const auto& x : c_) s += std::norm(x);
  return std::sqrt(s);
}

double Spinor4::max_abs() const {
  double m = 0.0;
  for (const auto& x : c_) m = std::max(m, std::abs(x));
  return m;
}

bool Spinor4::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

Spinor4 operator+(Spinor4 a, const Spinor4& b) { return a += b; }
Spinor4 operator-(Spinor4 a, const Spinor4& b) { return a -= b; }
Spinor4 operator*(Complex s, Spinor4 v) { return v *= s; }

Complex inner_product(const Spinor4& u, const Spinor4& v) {
  Complex s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

// ---------------------------------------------------------------------------
// Matrix2

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

Matrix2 operator*(Complex s, const Matrix2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

Matrix2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

Matrix2 pauli(int k) {
  switch (k) {
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -kI, kI, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw Error(ErrorCode::InvalidArgument, "pauli index must be 1, 2 or 3");
  }
}

// ---------------------------------------------------------------------------
// ComplexMatrix4

ComplexMatrix4 ComplexMatrix4::identity() { return diagonal(1.0, 1.0, 1.0, 1.0); }

ComplexMatrix4 ComplexMatrix4::diagonal(Complex d0, Complex d1, Complex d2, Complex d3) {
  ComplexMatrix4 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  m(3, 3) = d3;
  return m;
}

ComplexMatrix4 ComplexMatrix4::from_blocks(const Matrix2& tl, const Matrix2& tr,
                                           const Matrix2& bl, const Matrix2& br) {
  ComplexMatrix4 m;
  auto put = [&m](const Matrix2& b, std::size_t r0, std::size_t c0) {
    m(r0, c0) = b.a;
    m(r0, c0 + 1) = b.b;
    m(r0 + 1, c0) = b.c;
    m(r0 + 1, c0 + 1) = b.d;
  };
  put(tl, 0, 0);
  put(tr, 0, 2);
  put(bl, 2, 0);
  put(br, 2, 2);
  return m;
}

ComplexMatrix4& ComplexMatrix4::operator+=(const ComplexMatrix4& o) {
  for (std::size_t i = 0; i < 16; ++i) e_[i] += o.e_[i];
  return *this;
}

ComplexMatrix4& ComplexMatrix4::operator-=(const ComplexMatrix4& o) {
  for (std::size_t i = 0; i < 16; ++i) e_[i] -= o.e_[i];
  return *this;
}

ComplexMatrix4& ComplexMatrix4::operator*=(Complex s) {
  for (auto& x : e_) x *= s;
  return *this;
}

ComplexMatrix4 ComplexMatrix4::transpose() const {
  ComplexMatrix4 t;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ComplexMatrix4 ComplexMatrix4::conjugate() const {
  ComplexMatrix4 t = *this;
  for (auto& x : t.e_) x = std::conj(x);
  return t;
}

ComplexMatrix4 ComplexMatrix4::adjoint() const { return transpose().conjugate(); }

Complex ComplexMatrix4::trace() const {
  return e_[0] + e_[5] + e_[10] + e_[15];
}

Complex ComplexMatrix4::det() const {
  // Laplace expansion along the first two rows using complementary 2x2 minors.
  const auto& m = *this;
  auto minor_top = [&m](std::size_t a, std::size_t b) {
    return m(0, a) * m(1, b) - m(0, b) * m(1, a);
  };
  auto minor_bottom = [&m](std::size_t a, std::size_t b) {
    return m(2, a) * m(3, b) - m(2, b) * m(3, a);
  };
  return minor_top(0, 1) * minor_bottom(2, 3) - minor_top(0, 2) * minor_bottom(1, 3) +
         minor_top(0, 3) * minor_bottom(1, 2) + minor_top(1, 2) * minor_bottom(0, 3) -
         minor_top(1, 3) * minor_bottom(0, 2) + minor_top(2, 3) * minor_bottom(0, 1);
}

double ComplexMatrix4::max_abs() const {
  double m = 0.0;
  for (const auto& x : e_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix4::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : e_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix4::max_row_norm() const {
  double best = 0.0;
  for (std::size_t r = 0; r < 4; ++r) best = std::max(best, row(r).norm());
  return best;
}

bool ComplexMatrix4::is_finite() const {
  return std::all_of(e_.begin(), e_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

bool ComplexMatrix4::is_zero(double tol) const { return max_abs() <= tol; }

bool ComplexMatrix4::is_symmetric(double tol) const {
  return max_abs_diff(*this, transpose()) <= tol;
}

bool ComplexMatrix4::is_hermitian(double tol) const {
  return max_abs_diff(*this, adjoint()) <= tol;
}

bool ComplexMatrix4::is_nilpotent_order2(double tol) const {
  return ((*this) * (*this)).is_zero(tol);
}

Spinor4 ComplexMatrix4::row(std::size_t r) const {
  return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2), (*this)(r, 3)};
}

Spinor4 ComplexMatrix4::column(std::size_t c) const {
  return {(*this)(0, c), (*this)(1, c), (*this)(2, c), (*this)(3, c)};
}

void ComplexMatrix4::set_column(std::size_t c, const Spinor4& v) {
  for (std::size_t r = 0; r < 4; ++r) (*this)(r, c) = v[r];
}

ComplexMatrix4 operator+(ComplexMatrix4 a, const ComplexMatrix4& b) { return a += b; }
ComplexMatrix4 operator-(ComplexMatrix4 a, const ComplexMatrix4& b) { return a -= b; }
ComplexMatrix4 operator-(const ComplexMatrix4& a) { return Complex{-1.0} * a; }
ComplexMatrix4 operator*(Complex s, ComplexMatrix4 a) { return a *= s; }

ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  ComplexMatrix4 p;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      Complex s{};
      for (std::size_t k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      p(r, c) = s;
    }
  return p;
}

Spinor4 operator*(const ComplexMatrix4& a, const Spinor4& v) {
  Spinor4 out;
  for (std::size_t r = 0; r < 4; ++r) {
    Complex s{};
    for (std::size_t k = 0; k < 4; ++k) s += a(r, k) * v[k];
    out[r] = s;
  }
  return out;
}

ComplexMatrix4 anticommutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b + b * a;
}

ComplexMatrix4 commutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b - b * a;
}

double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b) { return (a - b).max_abs(); }

std::array<Complex, 4> characteristic_coefficients(const ComplexMatrix4& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::array<Complex, 4> c{};
  ComplexMatrix4 mk = ComplexMatrix4::identity();
  Complex prev{1.0};
  for (int k = 1; k <= 4; ++k) {
    if (k > 1) mk = m * mk + prev * ComplexMatrix4::identity();
    const Complex ck = -(m * mk).trace() / static_cast<double>(k);
    c[static_cast<std::size_t>(4 - k)] = ck;
    prev = ck;
  }
  return c;
}

Spinor4 solve_linear_4x4(const ComplexMatrix4& m, const Spinor4& rhs) {
  const double scale = m.max_row_norm();
  const double pivot_floor = kSingularRelTol * scale;
  ComplexMatrix4 a = m;
  Spinor4 b = rhs;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < 4; ++r)
      if (std::abs(a(r, k)) > std::abs(a(p, k))) p = r;
    if (!(std::abs(a(p, k)) > pivot_floor) || scale == 0.0)
      throw Error(ErrorCode::SingularMatrix, "solve_linear_4x4: pivot below singular tolerance");
    if (p != k) {
      for (std::size_t c = 0; c < 4; ++c) std::swap(a(k, c), a(p, c));
      std::swap(b[k], b[p]);
    }
    for (std::size_t r = k + 1; r < 4; ++r) {
      const Complex f = a(r, k) / a(k, k);
      if (f == Complex{}) continue;
      for (std::size_t c = k; c < 4; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  Spinor4 x;
  for (std::size_t i = 4; i-- > 0;) {
    Complex s = b[i];
    for (std::size_t c = i + 1; c < 4; ++c) s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Special matrices

const char* to_string(EtaRepresentation rep) noexcept {
  return rep == EtaRepresentation::Rep1 ? "rep1" : "rep2";
}

ComplexMatrix4 eta(EtaRepresentation rep) {
  const double h = 1.0 / std::sqrt(2.0);
  if (rep == EtaRepresentation::Rep1) {
    const Complex mi = -kI;
    return h * ComplexMatrix4({0.0, mi, 0.0, -1.0,
                               mi, 0.0, 1.0, 0.0,
                               0.0, 1.0, 0.0, mi,
                               -1.0, 0.0, mi, 0.0});
  }
  const Matrix2 zero{};
  return (kI * h) * ComplexMatrix4::from_blocks(zero, identity2() + pauli(2),
                                                identity2() - pauli(2), zero);
}

ComplexMatrix4 eta_dagger(EtaRepresentation rep) { return eta(rep).adjoint(); }

ComplexMatrix4 gamma(int index) {
  const Matrix2 zero{};
  const Matrix2 one = identity2();
  switch (index) {
    case 0: return ComplexMatrix4::diagonal(1.0, 1.0, -1.0, -1.0);
    case 1:
    case 2:
    case 3: {
      const Matrix2 s = pauli(index);
      return ComplexMatrix4::from_blocks(zero, s, Complex{-1.0} * s, zero);
    }
    case 5: return ComplexMatrix4::from_blocks(zero, one, one, zero);
    default: throw Error(ErrorCode::InvalidArgument, "gamma index must be 0, 1, 2, 3 or 5");
  }
}

ComplexMatrix4 gamma_lower(int index) {
  if (index >= 1 && index <= 3) return -gamma(index);
  return gamma(index);
}

// ---------------------------------------------------------------------------
// Reports

void AlgebraReport::add(std::string name, double max_deviation, double tol) {
  const bool ok = std::isfinite(max_deviation) && max_deviation <= tol;
  checks_.push_back({std::move(name), max_deviation, ok});
}

void AlgebraReport::record(std::string name, double value, bool pass) {
  checks_.push_back({std::move(name), value, pass});
}

void AlgebraReport::append(const AlgebraReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) checks_.push_back({prefix + "." + c.name, c.max_deviation, c.pass});
}

bool AlgebraReport::passed() const {
  return !checks_.empty() &&
         std::all_of(checks_.begin(), checks_.end(), [](const AlgebraCheck& c) { return c.pass; });
}

const AlgebraCheck* AlgebraReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(),
                         [&name](const AlgebraCheck& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

AlgebraReport verify_eta_candidate(const ComplexMatrix4& candidate, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const ComplexMatrix4 ed = candidate.adjoint();
  const ComplexMatrix4 two_i = Complex{2.0} * ComplexMatrix4::identity();

  AlgebraReport r;
  r.add("eta_squared_zero", (candidate * candidate).max_abs(), tol);
  r.add("eta_dagger_squared_zero", (ed * ed).max_abs(), tol);
  r.add("anticommutator_eta_eta_dagger_2I", max_abs_diff(anticommutator(candidate, ed), two_i), tol);
  r.add("eta_symmetric", max_abs_diff(candidate, candidate.transpose()), tol);
  r.add("trace_zero", std::abs(candidate.trace()), tol);
  r.add("det_zero", std::abs(candidate.det()), tol);
  double charpoly = 0.0;
  for (const auto& c : characteristic_coefficients(candidate)) charpoly = std::max(charpoly, std::abs(c));
  r.add("eigenvalues_zero", charpoly, tol);
  return r;
}

namespace {

// Records the better-fitting index position of a gamma identity.
void add_gamma_identity(AlgebraReport& r, const std::string& stem, int gamma_index,
                        const ComplexMatrix4& lhs, Complex factor, const ComplexMatrix4& offset,
                        double tol) {
  const double upper = max_abs_diff(lhs, offset + factor * gamma(gamma_index));
  const double lower = max_abs_diff(lhs, offset + factor * gamma_lower(gamma_index));
  if (upper <= lower)
    r.add(stem + "[upper_index]", upper, tol);
  else
    r.add(stem + "[lower_index]", lower, tol);
}

}  // namespace

AlgebraReport verify_eta_algebra(EtaRepresentation rep, double tol) {
  AlgebraReport r = verify_eta_candidate(eta(rep), tol);
  if (rep == EtaRepresentation::Rep1) {
    const ComplexMatrix4 e = eta(rep);
    const ComplexMatrix4 ed = eta_dagger(rep);
    add_gamma_identity(r, "current_kernel_eq_minus_i_sqrt2_gamma2", 2, e + ed,
                       -kI * std::sqrt(2.0), ComplexMatrix4::zero(), tol);
    add_gamma_identity(r, "density_kernel_eq_identity_plus_i_gamma3", 3, ed * e, kI,
                       ComplexMatrix4::identity(), tol);
  }
  return r;
}

}  // namespace spinstep
