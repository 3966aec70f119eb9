#include "irs/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "irs/errors.hpp"

namespace irs::sdp {

double Constraint::apply(const ComplexMatrix& x) const {
  double s = dense ? trace_product_real(*dense, x) : 0.0;
  for (const auto& e : entries) s += (e.value * x(e.col, e.row)).real();
  return s;
}

void Constraint::accumulate(ComplexMatrix& out, double scale) const {
  if (dense) out += *dense * complex{scale, 0.0};
  for (const auto& e : entries) out(e.row, e.col) += scale * e.value;
}

namespace {

double frobenius(const Constraint& a, std::size_t n) {
  ComplexMatrix m(n, n);
  a.accumulate(m, 1.0);
  return frobenius_norm(m);
}

// X A Zinv
ComplexMatrix left_right_product(const Constraint& a, const ComplexMatrix& x, const ComplexMatrix& zinv) {
  const std::size_t n = x.rows();
  ComplexMatrix g(n, n);
  if (a.dense) g = x * *a.dense * zinv;
  for (const auto& e : a.entries) {
    for (std::size_t i = 0; i < n; ++i) {
      const complex xi = x(i, e.row) * e.value;
      if (xi == complex{}) continue;
      auto out = g.row(i);
      const auto zrow = zinv.row(e.col);
      for (std::size_t j = 0; j < n; ++j) out[j] += xi * zrow[j];
    }
  }
  return g;
}

// Largest alpha with m + alpha dm still positive semidefinite (infinity if unbounded).
double max_step(const ComplexMatrix& m, const ComplexMatrix& dm) {
  const ComplexMatrix l = cholesky(m, 0.0);
  const double lowest = hermitian_eig(congruence_inverse(l, dm)).values.front();
  return lowest < 0.0 ? -1.0 / lowest : std::numeric_limits<double>::infinity();
}

// Inverse of a Hermitian positive-definite matrix through its Cholesky factor.
ComplexMatrix hpd_inverse(const ComplexMatrix& a) {
  const ComplexMatrix linv = lower_solve(cholesky(a, 0.0), ComplexMatrix::identity(a.rows()));
  return hermitian_part(linv.adjoint() * linv);
}

struct Direction {
  ComplexMatrix dx;
  ComplexMatrix dz;
  std::vector<double> dy;
};

}  // namespace

Result solve(const Problem& problem, const Options& options) {
  const std::size_t n = problem.objective.rows();
  const std::size_t m = problem.constraints.size();
  if (n == 0 || !problem.objective.square()) throw ValidationError("sdp: objective must be square and non-empty");
  if (m == 0) throw ValidationError("sdp: need at least one constraint");
  for (const auto& a : problem.constraints) {
    if (a.dense && (a.dense->rows() != n || a.dense->cols() != n))
      throw ValidationError("sdp: constraint dimension mismatch");
    for (const auto& e : a.entries)
      if (e.row >= n || e.col >= n) throw ValidationError("sdp: constraint entry out of range");
  }

  const ComplexMatrix& c = problem.objective;
  std::vector<double> b(m);
  double b_norm = 0.0;
  double a_scale = 0.0;
  double xi = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = problem.constraints[i].rhs;
    b_norm += b[i] * b[i];
    const double fa = frobenius(problem.constraints[i], n);
    a_scale = std::max(a_scale, fa);
    xi = std::max(xi, static_cast<double>(n) * (1.0 + std::abs(b[i])) / (1.0 + fa));
  }
  b_norm = std::sqrt(b_norm);
  const double c_norm = frobenius_norm(c);
  const double eta = std::max({1.0, c_norm, a_scale});

  Result r;
  r.x = ComplexMatrix::identity(n) * complex{xi, 0.0};
  r.z = ComplexMatrix::identity(n) * complex{eta, 0.0};
  r.y.assign(m, 0.0);

  const double dn = static_cast<double>(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Residuals: rp = b - A(X), rd = C + Z - A^T y.
    std::vector<double> rp(m);
    double rp_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      rp[i] = b[i] - problem.constraints[i].apply(r.x);
      rp_norm += rp[i] * rp[i];
    }
    ComplexMatrix rd = c + r.z;
    for (std::size_t i = 0; i < m; ++i) problem.constraints[i].accumulate(rd, -r.y[i]);

    r.primal_objective = trace_product_real(c, r.x);
    r.dual_objective = 0.0;
    for (std::size_t i = 0; i < m; ++i) r.dual_objective += b[i] * r.y[i];
    r.primal_residual = std::sqrt(rp_norm) / (1.0 + b_norm);
    r.dual_residual = frobenius_norm(rd) / (1.0 + c_norm);
    const double mu = trace_product_real(r.x, r.z) / dn;
    r.relative_gap = std::max(std::abs(r.primal_objective - r.dual_objective), dn * std::abs(mu)) /
                     (1.0 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
    r.iterations = iter;
    if (r.primal_residual <= options.tol && r.dual_residual <= options.tol && r.relative_gap <= options.tol)
      return r;

    const ComplexMatrix zinv = hpd_inverse(r.z);

    // Schur complement M_ij = Re tr(A_i X A_j Z^{-1}).
    ComplexMatrix schur(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexMatrix g = left_right_product(problem.constraints[j], r.x, zinv);
      for (std::size_t i = 0; i < m; ++i) schur(i, j) = problem.constraints[i].apply(g);
    }
    schur = hermitian_part(schur);
    const LuDecomposition schur_lu = lu_factor(schur);
    if (!(schur_lu.min_relative_pivot > 0.0)) throw NoConvergence("sdp: Schur complement became singular");

    const ComplexMatrix x_rd_zinv = r.x * rd * zinv;

    // target is the complementarity right-hand side times Z^{-1}.
    auto direction = [&](const ComplexMatrix& target) {
      const ComplexMatrix w = target - r.x + x_rd_zinv;
      ComplexVector rhs(m);
      for (std::size_t i = 0; i < m; ++i) rhs[i] = problem.constraints[i].apply(w) - rp[i];
      const ComplexVector dy = lu_solve(schur_lu, rhs);
      for (auto v : dy)
        if (!std::isfinite(v.real())) throw NoConvergence("sdp: non-finite search direction");
      Direction d{{}, rd * complex{-1.0, 0.0}, std::vector<double>(m)};
      for (std::size_t i = 0; i < m; ++i) {
        d.dy[i] = dy[i].real();
        problem.constraints[i].accumulate(d.dz, d.dy[i]);
      }
      d.dz = hermitian_part(d.dz);
      d.dx = hermitian_part(target - r.x - r.x * d.dz * zinv);
      return d;
    };

    auto step_lengths = [&](const Direction& d) {
      const double ap = std::min(1.0, 0.95 * max_step(r.x, d.dx));
      const double ad = std::min(1.0, 0.95 * max_step(r.z, d.dz));
      return std::pair{ap, ad};
    };

    // Predictor: pure Newton step towards mu = 0.
    const Direction affine = direction(ComplexMatrix(n, n));
    const auto [ap_aff, ad_aff] = step_lengths(affine);
    const double mu_aff =
        trace_product_real(r.x + affine.dx * complex{ap_aff, 0.0}, r.z + affine.dz * complex{ad_aff, 0.0}) / dn;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term dX_aff dZ_aff.
    const ComplexMatrix target = (ComplexMatrix::identity(n) * complex{sigma * mu, 0.0} - affine.dx * affine.dz) * zinv;
    const Direction d = direction(target);
    const auto [ap, ad] = step_lengths(d);

    r.x = hermitian_part(r.x + d.dx * complex{ap, 0.0});
    r.z = hermitian_part(r.z + d.dz * complex{ad, 0.0});
    for (std::size_t i = 0; i < m; ++i) r.y[i] += ad * d.dy[i];
  }
  throw NoConvergence("sdp: no convergence after " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace irs::sdp
