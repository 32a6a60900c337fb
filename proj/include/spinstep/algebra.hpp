#ifndef SPINSTEP_ALGEBRA_HPP
#define SPINSTEP_ALGEBRA_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace spinstep {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Four-component complex column vector.
class Spinor4 {
 public:
  Spinor4() = default;
  Spinor4(Complex c0, Complex c1, Complex c2, Complex c3) : c_{c0, c1, c2, c3} {}

  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }

  Spinor4& operator+=(const Spinor4& o);
  Spinor4& operator-=(const Spinor4& o);
  Spinor4& operator*=(Complex s);

  /// Euclidean norm, sqrt(u^dagger u).
  double norm() const;
  /// Largest component magnitude.
  double max_abs() const;
  bool is_finite() const;

  const std::array<Complex, 4>& components() const { return c_; }

 private:
  std::array<Complex, 4> c_{};
};

Spinor4 operator+(Spinor4 a, const Spinor4& b);
Spinor4 operator-(Spinor4 a, const Spinor4& b);
Spinor4 operator*(Complex s, Spinor4 v);

/// u^dagger v (conjugate-linear in the first argument).
Complex inner_product(const Spinor4& u, const Spinor4& v);

/// Dense 2x2 complex block, used to assemble 4x4 matrices from Pauli blocks.
struct Matrix2 {
  Complex a{}, b{}, c{}, d{};  // [[a, b], [c, d]]
};

Matrix2 operator+(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x, const Matrix2& y);
Matrix2 operator*(Complex s, const Matrix2& x);

Matrix2 identity2();
/// Pauli matrix sigma_k for k in {1, 2, 3}.
Matrix2 pauli(int k);

/// Dense 4x4 complex matrix, row-major, indexed (row, col).
class ComplexMatrix4 {
 public:
  ComplexMatrix4() = default;
  explicit ComplexMatrix4(const std::array<Complex, 16>& row_major) : e_(row_major) {}

  static ComplexMatrix4 zero() { return {}; }
  static ComplexMatrix4 identity();
  static ComplexMatrix4 diagonal(Complex d0, Complex d1, Complex d2, Complex d3);
  /// [[top_left, top_right], [bottom_left, bottom_right]].
  static ComplexMatrix4 from_blocks(const Matrix2& top_left, const Matrix2& top_right,
                                    const Matrix2& bottom_left, const Matrix2& bottom_right);

  Complex& operator()(std::size_t row, std::size_t col) { return e_[row * 4 + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return e_[row * 4 + col]; }

  ComplexMatrix4& operator+=(const ComplexMatrix4& o);
  ComplexMatrix4& operator-=(const ComplexMatrix4& o);
  ComplexMatrix4& operator*=(Complex s);

  ComplexMatrix4 transpose() const;
  ComplexMatrix4 conjugate() const;
  /// Conjugate transpose.
  ComplexMatrix4 adjoint() const;

  Complex trace() const;
  Complex det() const;

  /// Largest entry magnitude.
  double max_abs() const;
  double frobenius_norm() const;
  /// Largest Euclidean row norm.
  double max_row_norm() const;
  bool is_finite() const;

  bool is_zero(double tol) const;
  bool is_symmetric(double tol) const;
  bool is_hermitian(double tol) const;
  /// M^2 = 0 within tol.
  bool is_nilpotent_order2(double tol) const;

  Spinor4 row(std::size_t r) const;
  Spinor4 column(std::size_t c) const;
  void set_column(std::size_t c, const Spinor4& v);

 private:
  std::array<Complex, 16> e_{};
};

ComplexMatrix4 operator+(ComplexMatrix4 a, const ComplexMatrix4& b);
ComplexMatrix4 operator-(ComplexMatrix4 a, const ComplexMatrix4& b);
ComplexMatrix4 operator-(const ComplexMatrix4& a);
ComplexMatrix4 operator*(Complex s, ComplexMatrix4 a);
ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b);
Spinor4 operator*(const ComplexMatrix4& a, const Spinor4& v);

ComplexMatrix4 anticommutator(const ComplexMatrix4& a, const ComplexMatrix4& b);
ComplexMatrix4 commutator(const ComplexMatrix4& a, const ComplexMatrix4& b);

/// max |a(i,j) - b(i,j)|.
double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b);

/// Coefficients c[0..3] of det(lambda I - M) = lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0
/// (Faddeev-LeVerrier).
std::array<Complex, 4> characteristic_coefficients(const ComplexMatrix4& m);

/// Solves M x = rhs by Gaussian elimination with partial pivoting. Throws
/// Error(SingularMatrix) when a pivot falls below 1e-13 times the largest row norm.
Spinor4 solve_linear_4x4(const ComplexMatrix4& m, const Spinor4& rhs);

inline constexpr double kSingularRelTol = 1e-13;

enum class EtaRepresentation { Rep1, Rep2 };

const char* to_string(EtaRepresentation rep) noexcept;

ComplexMatrix4 eta(EtaRepresentation rep = EtaRepresentation::Rep1);
ComplexMatrix4 eta_dagger(EtaRepresentation rep = EtaRepresentation::Rep1);

/// Dirac-basis gamma matrix with an upper index: 0, 1, 2, 3, or 5 (gamma^5 = i g0 g1 g2 g3).
ComplexMatrix4 gamma(int index);
/// Lower-index gamma: gamma_0 = gamma^0, gamma_k = -gamma^k for k = 1..3, gamma_5 = gamma^5.
ComplexMatrix4 gamma_lower(int index);

struct AlgebraCheck {
  std::string name;
  double max_deviation = 0.0;
  bool pass = false;
};

class AlgebraReport {
 public:
  void add(std::string name, double max_deviation, double tol);
  /// Records a check whose verdict is not a deviation bound.
  void record(std::string name, double value, bool pass);
  /// Appends every check of other, prefixing names with "prefix.".
  void append(const AlgebraReport& other, const std::string& prefix);

  bool passed() const;
  const std::vector<AlgebraCheck>& checks() const { return checks_; }
  const AlgebraCheck* find(const std::string& name) const;

 private:
  std::vector<AlgebraCheck> checks_;
};

inline constexpr double kAlgebraTol = 1e-14;

/// Checks the nilpotent-pair relations on an arbitrary candidate matrix: eta^2 = 0,
/// (eta^dagger)^2 = 0, {eta, eta^dagger} = 2I, eta^T = eta, tr = 0, det = 0 and a
/// vanishing characteristic polynomial (all eigenvalues zero).
AlgebraReport verify_eta_candidate(const ComplexMatrix4& candidate, double tol);

/// verify_eta_candidate on eta(rep). For Rep1 the report also records the
/// gamma-matrix forms of the current and density kernels, eta + eta^dagger = -i sqrt2 gamma_2
/// and eta^dagger eta = I + i gamma_3, under whichever index position fits best; the
/// winning position is part of the check name.
AlgebraReport verify_eta_algebra(EtaRepresentation rep, double tol);

}  // namespace spinstep

#endif  // SPINSTEP_ALGEBRA_HPP
