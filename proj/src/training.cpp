#include "irs/training.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "irs/errors.hpp"

namespace irs {

PhaseShiftSet::PhaseShiftSet(int bits) : bits_(bits) {
  if (bits < 1 || bits > 16) throw ValidationError("phase set: bits must be in [1, 16]");
  levels_ = std::size_t{1} << bits;
}

double PhaseShiftSet::step() const { return 2.0 * std::numbers::pi / static_cast<double>(levels_); }

double PhaseShiftSet::value(std::size_t k) const { return static_cast<double>(k % levels_) * step(); }

complex PhaseShiftSet::unit(std::size_t k) const {
  k %= levels_;
  if ((4 * k) % levels_ == 0) {
    switch ((4 * k) / levels_) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, value(k));
}

std::size_t PhaseShiftSet::nearest(complex z) const {
  double phase = std::arg(z);
  if (phase < 0.0) phase += 2.0 * std::numbers::pi;
  const double x = phase / step();
  const double lower = std::floor(x);
  const double frac = x - lower;
  const auto lo = static_cast<std::size_t>(lower);
  std::size_t k = lo;
  if (std::abs(frac - 0.5) <= 1e-12) {
    k = lo;
  } else if (frac > 0.5) {
    k = lo + 1;
  }
  return k % levels_;
}

std::size_t PhaseShiftSet::nearest_turns(long long numerator, long long denominator) const {
  if (denominator <= 0) throw ValidationError("nearest_turns: denominator must be positive");
  const long long r = ((numerator % denominator) + denominator) % denominator;  // [0, denominator)
  // Target in level units is r * K / denominator.
  const long long scaled = r * static_cast<long long>(levels_);
  const long long lo = scaled / denominator;
  const long long rem = scaled % denominator;
  const long long k = (2 * rem > denominator) ? lo + 1 : lo;
  return static_cast<std::size_t>(k) % levels_;
}

bool PhaseShiftSet::contains(complex z, double tol) const {
  const std::size_t k = nearest(z);
  const double diff = std::abs(std::remainder(std::arg(z) - value(k), 2.0 * std::numbers::pi));
  return diff <= tol;
}

std::string_view to_string(PatternOrigin origin) {
  switch (origin) {
    case PatternOrigin::naive: return "naive";
    case PatternOrigin::dft: return "dft";
    case PatternOrigin::quantized_dft: return "quantized-dft";
    case PatternOrigin::truncated_hadamard: return "truncated-hadamard";
    case PatternOrigin::naive_fallback: return "naive-fallback";
    case PatternOrigin::exhaustive: return "exhaustive";
  }
  return "unknown";
}

ReflectionPattern::ReflectionPattern(ComplexMatrix matrix, PhaseShiftSet phase_set, PatternOrigin origin)
    : matrix_(std::move(matrix)), phase_set_(phase_set), origin_(origin) {
  if (!matrix_.square() || matrix_.rows() < 1) throw ValidationError("reflection pattern must be square");
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    if (matrix_(i, 0) != complex{1.0, 0.0})
      throw ValidationError("reflection pattern: first column must be all ones");
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      const complex z = matrix_(i, j);
      if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw ValidationError("reflection pattern: entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not unit-modulus");
      if (!phase_set_.contains(z))
        throw ValidationError("reflection pattern: entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") has a phase outside the alphabet");
    }
  }
}

ComplexMatrix ReflectionPattern::gram() const { return matrix_.adjoint() * matrix_; }

ReflectionPattern naive_pattern(std::size_t m_groups) {
  if (m_groups < 1) throw ValidationError("naive_pattern: need at least one group");
  const std::size_t n = m_groups + 1;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j && i != 0) ? -1.0 : 1.0;
  return {std::move(m), PhaseShiftSet(1), PatternOrigin::naive};
}

ComplexMatrix dft_matrix(std::size_t order) {
  if (order < 1) throw ValidationError("dft_matrix: order must be positive");
  ComplexMatrix d(order, order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) {
      const std::size_t r = (i * j) % order;
      if ((4 * r) % order == 0) {
        static constexpr complex quarter[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
        d(i, j) = quarter[(4 * r) / order];
      } else {
        d(i, j) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / n);
      }
    }
  return d;
}

ReflectionPattern quantized_dft_pattern(std::size_t m_groups, const PhaseShiftSet& phase_set) {
  if (m_groups < 1) throw ValidationError("quantized_dft_pattern: need at least one group");
  const std::size_t n = m_groups + 1;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto turns = -static_cast<long long>((i * j) % n);
      m(i, j) = phase_set.unit(phase_set.nearest_turns(turns, static_cast<long long>(n)));
    }
  return {std::move(m), phase_set, PatternOrigin::quantized_dft};
}

ReflectionPattern truncated_hadamard_pattern(std::size_t m_groups) {
  if (m_groups < 1) throw ValidationError("truncated_hadamard_pattern: need at least one group");
  const std::size_t n = m_groups + 1;
  for (std::size_t order = n; order <= 2 * n; ++order)
    if (hadamard_constructible(order))
      return {hadamard(order).block(n, n), PhaseShiftSet(1), PatternOrigin::truncated_hadamard};
  throw UnknownOrder("no constructible Hadamard order in [" + std::to_string(n) + ", " + std::to_string(2 * n) +
                     "]");
}

namespace {

bool full_rank(const ComplexMatrix& m) { return matrix_rank(m, 1e-9) == m.rows(); }

}  // namespace

ReflectionPattern design_pattern(std::size_t m_groups, const PhaseShiftSet& phase_set) {
  ReflectionPattern candidate = phase_set.bits() >= 2 ? quantized_dft_pattern(m_groups, phase_set)
                                                      : truncated_hadamard_pattern(m_groups);
  if (full_rank(candidate.matrix())) return candidate;
  return {naive_pattern(m_groups).matrix(), phase_set, PatternOrigin::naive_fallback};
}

double pattern_mse(const ReflectionPattern& pattern, double pt, double sigma2) {
  if (!(pt > 0.0)) throw ValidationError("pattern_mse: transmit power must be positive");
  return sigma2 / pt * trace(invert(pattern.gram())).real();
}

ReflectionPattern exhaustive_pattern_search(std::size_t m_groups, const PhaseShiftSet& phase_set) {
  if (m_groups < 1) throw ValidationError("exhaustive_pattern_search: need at least one group");
  const std::size_t n = m_groups + 1;
  const std::size_t free_entries = n * m_groups;
  if (static_cast<std::size_t>(phase_set.bits()) * free_entries > kMaxPatternSearchBits)
    throw Intractable("exhaustive_pattern_search: b*M*(M+1) exceeds " + std::to_string(kMaxPatternSearchBits));

  const std::size_t k_levels = phase_set.levels();
  std::vector<std::size_t> digits(free_entries, 0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, 0) = 1.0;

  double best = std::numeric_limits<double>::infinity();
  std::optional<ComplexMatrix> best_matrix;
  while (true) {
    for (std::size_t e = 0; e < free_entries; ++e) m(e / m_groups, 1 + e % m_groups) = phase_set.unit(digits[e]);
    const auto gram = m.adjoint() * m;
    if (lu_factor(gram).min_relative_pivot > kSingularTolerance) {
      const double value = trace(invert(gram)).real();
      if (!best_matrix || value < best - 1e-12 * std::abs(best)) {
        best = value;
        best_matrix = m;
      }
    }
    // Odometer with the last free entry varying fastest.
    std::size_t pos = free_entries;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < k_levels) break;
      digits[pos] = 0;
      if (pos == 0) {
        pos = free_entries + 1;
        break;
      }
    }
    if (pos == free_entries + 1) break;
  }
  if (!best_matrix) throw SingularMatrix("exhaustive_pattern_search: no full-rank pattern");
  return {std::move(*best_matrix), phase_set, PatternOrigin::exhaustive};
}

}  // namespace irs
