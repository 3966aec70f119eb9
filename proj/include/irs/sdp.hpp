#pragma once

// Dense primal-dual interior-point solver for small complex Hermitian SDPs
//
//   maximize   Re tr(C X)
//   subject to tr(A_i X) = b_i,  i = 1..m
//              X Hermitian positive semidefinite
//
// with dual  minimize b^T y  s.t.  Z = sum_i y_i A_i - C  positive semidefinite.
// Search directions are HKM; each iteration takes an affine predictor step to
// pick the centering parameter and then a centered corrector step.

#include <cstddef>
#include <optional>
#include <vector>

#include "irs/linalg.hpp"

namespace irs::sdp {

/// A_i as an optional dense Hermitian part plus a list of sparse entries.
struct Constraint {
  struct Entry {
    std::size_t row;
    std::size_t col;
    complex value;
  };
  std::optional<ComplexMatrix> dense;
  std::vector<Entry> entries;
  double rhs = 0.0;

  /// Re tr(A X)
  double apply(const ComplexMatrix& x) const;
  /// Adds scale * A to out.
  void accumulate(ComplexMatrix& out, double scale) const;
};

struct Problem {
  ComplexMatrix objective;  // C
  std::vector<Constraint> constraints;
};

struct Options {
  double tol = 1e-9;
  int max_iterations = 200;
};

struct Result {
  ComplexMatrix x;
  ComplexMatrix z;
  std::vector<double> y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;    // ||A^T y - Z - C||_F / (1 + ||C||_F)
  double relative_gap = 0.0;
  int iterations = 0;
};

/// Throws NoConvergence after max_iterations, ValidationError on malformed data.
Result solve(const Problem& problem, const Options& options = {});

}  // namespace irs::sdp
