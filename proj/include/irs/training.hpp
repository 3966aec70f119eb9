#pragma once

#include <cstddef>
#include <string_view>

#include "irs/linalg.hpp"

namespace irs {

/// Uniform discrete phase alphabet {0, 2pi/K, ..., (K-1) 2pi/K} with K = 2^bits.
class PhaseShiftSet {
 public:
  explicit PhaseShiftSet(int bits);

  int bits() const { return bits_; }
  std::size_t levels() const { return levels_; }
  double step() const;
  double value(std::size_t k) const;
  /// e^{j k step}, exact at multiples of pi/2.
  complex unit(std::size_t k) const;

  /// Index of the level nearest to arg(z). A target midway between two levels
  /// goes to the lower of the two bracketing levels.
  std::size_t nearest(complex z) const;
  /// Same rule for a target phase of (numerator / denominator) full turns;
  /// ties are detected exactly.
  std::size_t nearest_turns(long long numerator, long long denominator) const;

  /// True if arg(z) matches a level within tol radians.
  bool contains(complex z, double tol = 1e-9) const;

  friend bool operator==(const PhaseShiftSet&, const PhaseShiftSet&) = default;

 private:
  int bits_;
  std::size_t levels_;
};

enum class PatternOrigin { naive, dft, quantized_dft, truncated_hadamard, naive_fallback, exhaustive };

std::string_view to_string(PatternOrigin origin);

/// Training reflection pattern: (M+1)x(M+1), first column all ones, every
/// entry unit-modulus with phase in the alphabet. Validated on construction.
class ReflectionPattern {
 public:
  ReflectionPattern(ComplexMatrix matrix, PhaseShiftSet phase_set, PatternOrigin origin);

  const ComplexMatrix& matrix() const { return matrix_; }
  const PhaseShiftSet& phase_set() const { return phase_set_; }
  PatternOrigin origin() const { return origin_; }
  std::size_t size() const { return matrix_.rows(); }
  std::size_t groups() const { return matrix_.rows() - 1; }
  bool fell_back() const { return origin_ == PatternOrigin::naive_fallback; }

  /// Theta^H Theta
  ComplexMatrix gram() const;

 private:
  ComplexMatrix matrix_;
  PhaseShiftSet phase_set_;
  PatternOrigin origin_;
};

/// -1 on the diagonal except the (1,1) entry, +1 elsewhere. Feasible for all b.
ReflectionPattern naive_pattern(std::size_t m_groups);

/// [D]_{ij} = exp(-j 2 pi i j / order), zero-based.
ComplexMatrix dft_matrix(std::size_t order);

/// DFT of order M+1 with every entry snapped to the nearest alphabet level.
/// Rank is not guaranteed.
ReflectionPattern quantized_dft_pattern(std::size_t m_groups, const PhaseShiftSet& phase_set);

/// True if one of the implemented constructions (Sylvester, Paley I,
/// Paley II, doubling) reaches this order.
bool hadamard_constructible(std::size_t order);

/// Normalized Hadamard matrix (first row and column all +1). Throws
/// UnknownOrder when no implemented construction reaches the order.
ComplexMatrix hadamard(std::size_t order);

/// Leading (M+1)x(M+1) block of the smallest constructible Hadamard matrix of
/// order >= M+1, with the 1-bit alphabet.
ReflectionPattern truncated_hadamard_pattern(std::size_t m_groups);

/// Quantized DFT for b >= 2, truncated Hadamard for b = 1; falls back to the
/// naive pattern (origin naive_fallback) if the construction is rank-deficient.
ReflectionPattern design_pattern(std::size_t m_groups, const PhaseShiftSet& phase_set);

/// (sigma2 / pt) tr((Theta^H Theta)^{-1}); throws SingularMatrix if the Gram
/// matrix cannot be inverted.
double pattern_mse(const ReflectionPattern& pattern, double pt, double sigma2);

inline constexpr int kMaxPatternSearchBits = 20;

/// Brute force over all feasible patterns; keeps the first minimizer in
/// lexicographic order. Throws Intractable if b M (M+1) > 20.
ReflectionPattern exhaustive_pattern_search(std::size_t m_groups, const PhaseShiftSet& phase_set);

}  // namespace irs
