#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "irs/errors.hpp"
#include "irs/linalg.hpp"

using irs::complex;
using irs::ComplexMatrix;
using irs::ComplexVector;

TEST_CASE("identity inverts to itself") {
  const auto inv = irs::invert(ComplexMatrix::identity(3));
  CHECK(irs::max_abs_diff(inv, ComplexMatrix::identity(3)) == 0.0);
}

TEST_CASE("2x2 sign matrix inverse matches the closed form") {
  const ComplexMatrix a{{1, 1}, {1, -1}};
  // [[a, b], [c, d]]^{-1} = [[d, -b], [-c, a]] / (ad - bc), here det = -2.
  const ComplexMatrix expected{{0.5, 0.5}, {0.5, -0.5}};
  CHECK(irs::max_abs_diff(irs::invert(a), expected) < 1e-15);
}

TEST_CASE("inverse of a 3x3 Gram matrix has trace 1.5") {
  const ComplexMatrix g{{3, 1, 1}, {1, 3, -1}, {1, -1, 3}};
  // det = 16 and every diagonal cofactor is 8.
  CHECK(irs::trace(irs::invert(g)).real() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(testing::max_identity_error(g * irs::invert(g)) < 1e-14);
}

TEST_CASE("invert rejects singular input") {
  const ComplexMatrix ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  CHECK_THROWS_AS(irs::invert(ones), irs::SingularMatrix);
  const ComplexMatrix tiny{{1, 0}, {0, 1e-14}};
  CHECK_THROWS_AS(irs::invert(tiny), irs::SingularMatrix);
}

TEST_CASE("random matrices: a a^{-1} = I and double inversion round-trips") {
  irs::Rng rng = irs::make_rng(11);
  for (std::size_t n : {1, 2, 5, 9, 17, 33, 65}) {
    const auto a = testing::random_matrix(n, n, rng);
    const auto inv = irs::invert(a);
    CHECK(testing::max_identity_error(a * inv) <= 1e-9);
    CHECK(irs::max_abs_diff(irs::invert(inv), a) <= 1e-7);
  }
}

TEST_CASE("solve agrees with invert times vector") {
  irs::Rng rng = irs::make_rng(12);
  const auto a = testing::random_matrix(7, 7, rng);
  const auto b = testing::random_vector(7, rng);
  const auto x = irs::solve(a, b);
  const auto y = irs::invert(a) * std::span<const complex>(b);
  for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(x[i] - y[i]) < 1e-12);
}

TEST_CASE("matrix_rank") {
  CHECK(irs::matrix_rank(ComplexMatrix::identity(4), 1e-9) == 4);
  const ComplexMatrix ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  CHECK(irs::matrix_rank(ones, 1e-9) == 1);
  const ComplexMatrix h4{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  CHECK(irs::matrix_rank(h4, 1e-9) == 4);

  SUBCASE("invariant under row permutation") {
    irs::Rng rng = irs::make_rng(13);
    // rank-3 6x6 product
    const auto a = testing::random_matrix(6, 3, rng) * testing::random_matrix(3, 6, rng);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      ComplexMatrix p(6, 6);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) p(i, j) = a(perm[i], j);
      CHECK(irs::matrix_rank(p, 1e-9) == 3);
    } while (std::next_permutation(perm.begin(), perm.begin() + 3));
  }
}

TEST_CASE("hermitian_eig_max on small closed-form cases") {
  SUBCASE("diagonal") {
    const auto d = ComplexMatrix::diagonal(ComplexVector{1.0, 2.0, 3.0});
    const auto [value, vec] = irs::hermitian_eig_max(d);
    CHECK(value == doctest::Approx(3.0));
    CHECK(std::abs(vec[2] - complex{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(vec[0]) < 1e-12);
  }
  SUBCASE("rank-one projector") {
    const ComplexVector v{complex{0.6, 0.0}, complex{0.0, 0.8}};
    const auto [value, vec] = irs::hermitian_eig_max(ComplexMatrix::outer(v));
    CHECK(value == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(irs::inner(vec, v)) - 1.0) < 1e-12);
  }
  SUBCASE("[[2,1],[1,2]]") {
    // det(a - x I) = (2 - x)^2 - 1 has roots 1 and 3.
    const ComplexMatrix a{{2, 1}, {1, 2}};
    const auto [value, vec] = irs::hermitian_eig_max(a);
    CHECK(value == doctest::Approx(3.0));
    CHECK(std::abs(vec[0] - complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(std::abs(vec[1] - complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
  }
}

TEST_CASE("hermitian_eig residuals and Rayleigh-quotient maximality") {
  irs::Rng rng = irs::make_rng(14);
  for (std::size_t n : {2, 3, 8, 17, 33, 65}) {
    const auto a = testing::random_hermitian(n, rng);
    const auto eig = irs::hermitian_eig(a);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    const double scale = irs::frobenius_norm(a);
    for (std::size_t k = 0; k < n; ++k) {
      ComplexVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, k);
      const auto av = a * std::span<const complex>(v);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += std::norm(av[i] - eig.values[k] * v[i]);
      CHECK(std::sqrt(r) <= 1e-8 * scale);
    }
    CHECK(testing::max_identity_error(eig.vectors.adjoint() * eig.vectors) < 1e-12);

    const auto top = irs::hermitian_eig_max(a);
    for (int t = 0; t < 100; ++t) {
      auto u = testing::random_vector(n, rng);
      const double norm = std::sqrt(irs::squared_norm(u));
      for (auto& z : u) z /= norm;
      CHECK(top.value >= irs::quadratic_form(a, u) - 1e-12 * scale);
    }
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  const ComplexMatrix a{{1, 2}, {0, 1}};
  CHECK_THROWS_AS(irs::hermitian_eig(a), std::invalid_argument);
}

TEST_CASE("cholesky reconstructs and lower_solve inverts") {
  irs::Rng rng = irs::make_rng(15);
  const auto b = testing::random_matrix(6, 6, rng);
  const auto a = irs::hermitian_part(b * b.adjoint()) + ComplexMatrix::identity(6);
  const auto l = irs::cholesky(a);
  CHECK(irs::max_abs_diff(l * l.adjoint(), a) < 1e-12);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) CHECK(l(i, j) == complex{});
  CHECK(testing::max_identity_error(irs::congruence_inverse(l, a)) < 1e-12);
  CHECK_THROWS_AS(irs::cholesky(ComplexMatrix{{1, 0}, {0, -1}}), irs::SingularMatrix);
}

TEST_CASE("quadratic form and inner product conventions") {
  const ComplexVector a{complex{0, 1}, complex{1, 0}};
  const ComplexVector b{complex{1, 0}, complex{0, 1}};
  // a^H b = conj(j) * 1 + 1 * j = -j + j = 0
  CHECK(std::abs(irs::inner(a, b)) < 1e-15);
  const ComplexMatrix m{{2, complex{0, 1}}, {complex{0, -1}, 2}};
  CHECK(irs::quadratic_form(m, a) == doctest::Approx((irs::inner(a, m * std::span<const complex>(a))).real()));
}
