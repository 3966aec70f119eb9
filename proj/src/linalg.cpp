#include "irs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "irs/errors.hpp"

namespace irs {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw std::invalid_argument("block: out of range");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i, j);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("+=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("-=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    complex acc{};
    for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

complex trace(const ComplexMatrix& a) {
  complex t{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product_real: shape mismatch");
  double t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += (a(i, k) * b(k, i)).real();
  return t;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (auto z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (auto z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double max_row_norm(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (auto z : a.row(i)) s += std::abs(z);
    m = std::max(m, s);
  }
  return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.square()) return false;
  const double scale = std::max(1.0, max_abs(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
  return true;
}

complex inner(std::span<const complex> a, std::span<const complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double squared_norm(std::span<const complex> v) {
  double s = 0.0;
  for (auto z : v) s += std::norm(z);
  return s;
}

double quadratic_form(const ComplexMatrix& a, std::span<const complex> v) {
  if (!a.square() || a.rows() != v.size()) throw std::invalid_argument("quadratic_form: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto r = a.row(i);
    complex acc{};
    for (std::size_t j = 0; j < v.size(); ++j) acc += r[j] * v[j];
    s += (std::conj(v[i]) * acc).real();
  }
  return s;
}

LuDecomposition lu_factor(const ComplexMatrix& a) {
  if (!a.square()) throw std::invalid_argument("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuDecomposition out{a, std::vector<std::size_t>(n), 0.0};
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  auto& lu = out.lu;
  const double scale = max_row_norm(a);
  double min_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap(out.perm[k], out.perm[p]);
    }
    const complex pivot = lu(k, k);
    min_pivot = std::min(min_pivot, std::abs(pivot));
    if (pivot == complex{}) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const complex f = lu(i, k) / pivot;
      lu(i, k) = f;
      if (f == complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  out.min_relative_pivot = scale > 0.0 ? min_pivot / scale : 0.0;
  return out;
}

ComplexVector lu_solve(const LuDecomposition& f, std::span<const complex> b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw std::invalid_argument("lu_solve: length mismatch");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    complex s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    complex s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

namespace {

LuDecomposition checked_lu(const ComplexMatrix& a) {
  auto f = lu_factor(a);
  if (!(f.min_relative_pivot > kSingularTolerance))
    throw SingularMatrix("matrix is numerically singular");
  return f;
}

}  // namespace

ComplexMatrix invert(const ComplexMatrix& a) {
  const auto f = checked_lu(a);
  const std::size_t n = a.rows();
  ComplexMatrix inv(n, n);
  ComplexVector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), complex{});
    e[j] = 1.0;
    const auto col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

ComplexVector solve(const ComplexMatrix& a, std::span<const complex> b) {
  return lu_solve(checked_lu(a), b);
}

ComplexMatrix cholesky(const ComplexMatrix& a, double rel_tol) {
  if (!a.square()) throw std::invalid_argument("cholesky: matrix not square");
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > rel_tol * scale)) throw SingularMatrix("cholesky: matrix not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix lower_solve(const ComplexMatrix& lower, const ComplexMatrix& b) {
  const std::size_t n = lower.rows();
  if (b.rows() != n) throw std::invalid_argument("lower_solve: shape mismatch");
  ComplexMatrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      complex s = b(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * x(k, c);
      x(i, c) = s / lower(i, i);
    }
  }
  return x;
}

ComplexMatrix congruence_inverse(const ComplexMatrix& lower, const ComplexMatrix& a) {
  // L^{-1} a L^{-H} = (L^{-1} (L^{-1} a)^H)^H
  const ComplexMatrix left = lower_solve(lower, a);
  return hermitian_part(lower_solve(lower, left.adjoint()).adjoint());
}

std::size_t matrix_rank(const ComplexMatrix& a, double tol) {
  ComplexMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  std::vector<double> pivots;
  pivots.reserve(steps);

  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = k, pc = k;
    double best = -1.0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pr = i;
          pc = j;
        }
    if (best <= 0.0) break;
    if (pr != k) std::swap_ranges(m.row(k).begin(), m.row(k).end(), m.row(pr).begin());
    if (pc != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, k), m(i, pc));
    pivots.push_back(best);
    const complex pivot = m(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const complex f = m(i, k) / pivot;
      if (f == complex{}) continue;
      for (std::size_t j = k; j < cols; ++j) m(i, j) -= f * m(k, j);
    }
  }
  if (pivots.empty()) return 0;
  const double largest = *std::max_element(pivots.begin(), pivots.end());
  return static_cast<std::size_t>(
      std::count_if(pivots.begin(), pivots.end(), [&](double p) { return p > tol * largest; }));
}

HermitianEigen hermitian_eig(const ComplexMatrix& input) {
  if (!input.square()) throw std::invalid_argument("hermitian_eig: matrix not square");
  if (!is_hermitian(input, 1e-9)) throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
  const std::size_t n = input.rows();
  ComplexMatrix a = hermitian_part(input);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = frobenius_norm(a);

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_diagonal() > 1e-15 * norm) {
    if (++sweep > kMaxJacobiSweeps) throw NoConvergence("hermitian_eig: sweep cap exceeded");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const complex phase = apq / r;  // e^{i phi}
        // J = P R with P = diag(.., e^{-i phi} at q, ..); J^H a J zeroes (p, q).
        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Eigenpair hermitian_eig_max(const ComplexMatrix& a) {
  const auto eig = hermitian_eig(a);
  const std::size_t n = a.rows();
  ComplexVector vec(n);
  std::size_t big = 0;
  for (std::size_t i = 0; i < n; ++i) {
    vec[i] = eig.vectors(i, n - 1);
    if (std::abs(vec[i]) > std::abs(vec[big]) + 1e-12) big = i;
  }
  const complex align = std::conj(vec[big]) / std::abs(vec[big]);
  for (auto& z : vec) z *= align;
  return {eig.values.back(), std::move(vec)};
}

}  // namespace irs
