#pragma once

#include <cmath>
#include <cstddef>

#include "irs/linalg.hpp"
#include "irs/random.hpp"

namespace testing {

inline irs::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, irs::Rng& rng) {
  irs::ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = irs::complex_gaussian(rng, 1.0);
  return m;
}

inline irs::ComplexVector random_vector(std::size_t n, irs::Rng& rng, double variance = 1.0) {
  irs::ComplexVector v(n);
  for (auto& z : v) z = irs::complex_gaussian(rng, variance);
  return v;
}

inline irs::ComplexMatrix random_hermitian(std::size_t n, irs::Rng& rng) {
  return irs::hermitian_part(random_matrix(n, n, rng));
}

inline double max_identity_error(const irs::ComplexMatrix& m) {
  return irs::max_abs_diff(m, irs::ComplexMatrix::identity(m.rows()));
}

}  // namespace testing
