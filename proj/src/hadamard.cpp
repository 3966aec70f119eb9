// Hadamard synthesis: Sylvester doubling, Paley I (q = 3 mod 4) and Paley II
// (q = 1 mod 4) over GF(q) for prime powers q, and doubling of anything
// already constructible.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "irs/errors.hpp"
#include "irs/training.hpp"

namespace irs {
namespace {

using SignMatrix = std::vector<std::vector<int>>;

struct PrimePower {
  int p;
  int k;
};

std::optional<PrimePower> as_prime_power(long long q) {
  if (q < 2) return std::nullopt;
  int p = 0;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = static_cast<int>(d);
      break;
    }
  if (p == 0) return PrimePower{static_cast<int>(q), 1};
  int k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, k};
}

// Elements of GF(p^k) are integers in [0, q) read as base-p digit vectors,
// i.e. polynomials over GF(p) reduced modulo a monic irreducible of degree k.
class GaloisField {
 public:
  GaloisField(int p, int k) : p_(p), k_(k) {
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;
    if (k > 1) find_modulus();
  }

  int order() const { return q_; }

  int sub(int a, int b) const {
    int out = 0;
    int place = 1;
    for (int i = 0; i < k_; ++i) {
      const int da = a % p_, db = b % p_;
      out += ((da - db + p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  int mul(int a, int b) const {
    if (k_ == 1) return (a * b) % p_;
    std::vector<int> prod(2 * k_ - 1, 0);
    const auto da = digits(a), db = digits(b);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // Reduce with x^k = -(modulus_[0] + ... + modulus_[k-1] x^{k-1}).
    for (int d = 2 * k_ - 2; d >= k_; --d) {
      const int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < k_; ++i) prod[d - k_ + i] = ((prod[d - k_ + i] - c * modulus_[i]) % p_ + p_) % p_;
    }
    int out = 0;
    for (int i = k_ - 1; i >= 0; --i) out = out * p_ + prod[i];
    return out;
  }

  /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  std::vector<int> quadratic_character() const {
    std::vector<int> chi(q_, -1);
    chi[0] = 0;
    for (int x = 1; x < q_; ++x) chi[mul(x, x)] = 1;
    return chi;
  }

 private:
  std::vector<int> digits(int a) const {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  // A candidate modulus gives a field iff the quotient ring has no zero divisors.
  void find_modulus() {
    for (int code = 0; code < q_; ++code) {
      modulus_ = digits(code);
      if (modulus_[0] == 0) continue;
      bool field = true;
      for (int a = 1; a < q_ && field; ++a)
        for (int b = a; b < q_; ++b)
          if (mul(a, b) == 0) {
            field = false;
            break;
          }
      if (field) return;
    }
    throw UnknownOrder("no irreducible polynomial found for GF(" + std::to_string(q_) + ")");
  }

  int p_;
  int k_;
  int q_ = 1;
  std::vector<int> modulus_;
};

SignMatrix jacobsthal(const GaloisField& f) {
  const int q = f.order();
  const auto chi = f.quadratic_character();
  SignMatrix m(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) m[a][b] = chi[f.sub(a, b)];
  return m;
}

SignMatrix paley_one(const PrimePower& pp) {
  const GaloisField f(pp.p, pp.k);
  const int q = f.order();
  const auto jq = jacobsthal(f);
  const int n = q + 1;
  SignMatrix h(n, std::vector<int>(n));
  // H = I + [[0, 1^T], [-1, Q]]
  for (int j = 1; j < n; ++j) {
    h[0][j] = 1;
    h[j][0] = -1;
  }
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) h[a + 1][b + 1] = jq[a][b];
  for (int i = 0; i < n; ++i) h[i][i] += 1;
  return h;
}

SignMatrix paley_two(const PrimePower& pp) {
  const GaloisField f(pp.p, pp.k);
  const int q = f.order();
  const auto jq = jacobsthal(f);
  const int c = q + 1;
  SignMatrix conference(c, std::vector<int>(c, 0));
  for (int j = 1; j < c; ++j) conference[0][j] = conference[j][0] = 1;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) conference[a + 1][b + 1] = jq[a][b];
  // 0 -> [[1,-1],[-1,-1]], +-1 -> +-[[1,1],[1,-1]]
  SignMatrix h(2 * c, std::vector<int>(2 * c));
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) {
      const int s = conference[i][j];
      const int blk[2][2] = {{s == 0 ? 1 : s, s == 0 ? -1 : s}, {s == 0 ? -1 : s, s == 0 ? -1 : -s}};
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) h[2 * i + u][2 * j + v] = blk[u][v];
    }
  return h;
}

SignMatrix doubled(const SignMatrix& h) {
  const std::size_t n = h.size();
  SignMatrix out(2 * n, std::vector<int>(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out[i][j] = out[i][j + n] = out[i + n][j] = h[i][j];
      out[i + n][j + n] = -h[i][j];
    }
  return out;
}

void normalize(SignMatrix& h) {
  const std::size_t n = h.size();
  for (std::size_t j = 0; j < n; ++j)
    if (h[0][j] < 0)
      for (std::size_t i = 0; i < n; ++i) h[i][j] = -h[i][j];
  for (std::size_t i = 0; i < n; ++i)
    if (h[i][0] < 0)
      for (std::size_t j = 0; j < n; ++j) h[i][j] = -h[i][j];
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::optional<SignMatrix> build(std::size_t order) {
  if (order == 1) return SignMatrix{{1}};
  if (order == 2) return SignMatrix{{1, 1}, {1, -1}};
  if (order % 4 != 0) return std::nullopt;
  if (power_of_two(order)) return doubled(*build(order / 2));
  if (auto pp = as_prime_power(static_cast<long long>(order) - 1); pp && (order - 1) % 4 == 3)
    return paley_one(*pp);
  if (auto pp = as_prime_power(static_cast<long long>(order / 2) - 1); pp && (order / 2 - 1) % 4 == 1)
    return paley_two(*pp);
  if (auto half = build(order / 2)) return doubled(*half);
  return std::nullopt;
}

const std::optional<SignMatrix>& cached(std::size_t order) {
  static std::mutex mutex;
  static std::map<std::size_t, std::optional<SignMatrix>> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    auto h = build(order);
    if (h) normalize(*h);
    it = cache.emplace(order, std::move(h)).first;
  }
  return it->second;
}

}  // namespace

bool hadamard_constructible(std::size_t order) { return order >= 1 && cached(order).has_value(); }

ComplexMatrix hadamard(std::size_t order) {
  if (order == 0) throw UnknownOrder("hadamard: order must be positive");
  const auto& h = cached(order);
  if (!h) throw UnknownOrder("no implemented Hadamard construction for order " + std::to_string(order));
  ComplexMatrix m(order, order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) m(i, j) = static_cast<double>((*h)[i][j]);
  return m;
}

}  // namespace irs
