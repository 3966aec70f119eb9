#pragma once

// Small dense complex linear algebra. Every matrix in the pipeline is at most
// a few dozen rows, so everything here is a direct O(n^3) method.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace irs {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const complex> diag);
  /// v v^H
  static ComplexMatrix outer(std::span<const complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// Leading rows x cols block.
  ComplexMatrix block(std::size_t rows, std::size_t cols) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex s);

  bool all_finite() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, complex s);
ComplexMatrix operator*(complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> x);

complex trace(const ComplexMatrix& a);
/// Re tr(a b) without forming the product.
double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b);
/// (a + a^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// max_i sum_j |a_ij|
double max_row_norm(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// a^H b
complex inner(std::span<const complex> a, std::span<const complex> b);
double squared_norm(std::span<const complex> v);
/// Re(v^H a v); exact quadratic form for Hermitian a.
double quadratic_form(const ComplexMatrix& a, std::span<const complex> v);

/// LU with partial pivoting, P a = L U packed into one matrix.
struct LuDecomposition {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  /// Smallest |u_kk| relative to max_row_norm of the input.
  double min_relative_pivot = 0.0;
};

LuDecomposition lu_factor(const ComplexMatrix& a);
ComplexVector lu_solve(const LuDecomposition& lu, std::span<const complex> b);

/// Relative pivot threshold below which a matrix is treated as singular.
inline constexpr double kSingularTolerance = 1e-12;

/// Throws SingularMatrix when a pivot falls under kSingularTolerance * max_row_norm(a).
ComplexMatrix invert(const ComplexMatrix& a);
ComplexVector solve(const ComplexMatrix& a, std::span<const complex> b);

/// Lower Cholesky factor of a Hermitian positive-definite matrix; throws
/// SingularMatrix if a pivot falls to rel_tol * max|a_ij| or below.
ComplexMatrix cholesky(const ComplexMatrix& a, double rel_tol = kSingularTolerance);
/// L^{-1} b for lower-triangular L.
ComplexMatrix lower_solve(const ComplexMatrix& lower, const ComplexMatrix& b);
/// L^{-1} a L^{-H}
ComplexMatrix congruence_inverse(const ComplexMatrix& lower, const ComplexMatrix& a);

/// Rank from the pivots of an elimination with complete pivoting; pivots
/// below tol times the largest pivot count as zero.
std::size_t matrix_rank(const ComplexMatrix& a, double tol);

/// Eigenvalues ascending, eigenvectors as matching columns.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

inline constexpr int kMaxJacobiSweeps = 10000;

/// Cyclic complex Jacobi. Symmetrizes its input; throws std::invalid_argument
/// if the input is not Hermitian within 1e-9 relative, NoConvergence when the
/// sweep cap is hit.
HermitianEigen hermitian_eig(const ComplexMatrix& a);

struct Eigenpair {
  double value;
  ComplexVector vector;
};

/// Dominant eigenpair; the eigenvector is unit-norm with its largest entry
/// real and positive.
Eigenpair hermitian_eig_max(const ComplexMatrix& a);

}  // namespace irs
