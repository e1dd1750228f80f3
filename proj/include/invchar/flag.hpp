#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "invchar/characters.hpp"
#include "invchar/combinatorics.hpp"
#include "invchar/linalg.hpp"
#include "invchar/toric_trace.hpp"

namespace invchar::flag {

/// Hermitian matrices with a fixed centrally symmetric simple spectrum,
/// acted on by the circle through diag(e^{i r_1 t}, ..., e^{i r_n t}).
struct FlagSpec {
  int n = 0;
  std::vector<Rational> spectrum;
  std::vector<Rational> weights;

  /// Spectrum ±1, ±2, ... (plus 0 for odd n) and weights 1..n.
  static FlagSpec standard(int n) {
    FlagSpec s;
    s.n = n;
    for (int i = 1; i <= n / 2; ++i) {
      s.spectrum.emplace_back(-i);
      s.spectrum.emplace_back(i);
    }
    if (n % 2) s.spectrum.emplace_back(0);
    std::sort(s.spectrum.begin(), s.spectrum.end());
    for (int i = 1; i <= n; ++i) s.weights.emplace_back(i);
    return s;
  }

  void validate() const {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "flag variety needs n >= 2, got " + std::to_string(n));
    if (static_cast<int>(spectrum.size()) != n || static_cast<int>(weights.size()) != n)
      throw Error(ErrorKind::InvalidInput, "spectrum and weights must have n entries");
    auto sorted = spectrum;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidInput, "spectrum values must be mutually different");
    auto negated = sorted;
    for (auto& x : negated) x = -x;
    std::sort(negated.begin(), negated.end());
    if (negated != sorted) throw Error(ErrorKind::InvalidInput, "spectrum is not centrally symmetric");
    auto w = weights;
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) throw Error(ErrorKind::InvalidInput, "weights must be mutually different");
  }
};

/// Dimensions of H^{2m} of the complete flag variety, m = 0..n(n-1)/2:
/// coefficients of prod_{j=1}^{n} (1 + q + ... + q^{j-1}).
inline std::vector<std::int64_t> coinvariant_dims(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "flag variety needs n >= 2, got " + std::to_string(n));
  std::vector<std::int64_t> c{1};
  for (int j = 1; j <= n; ++j) {
    std::vector<std::int64_t> next(c.size() + j - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int s = 0; s < j; ++s) next[i + s] += c[i];
    c = std::move(next);
  }
  return c;
}

/// Linear substitution x_i -> sign · x_{perm[i]} on Q[x_1..x_n]. With a
/// common sign it maps every elementary symmetric polynomial e_j to
/// sign^j e_j, so it descends to the coinvariant algebra.
struct Substitution {
  std::vector<int> perm;
  int sign = 1;

  static Substitution identity(int n) {
    Substitution s;
    for (int i = 0; i < n; ++i) s.perm.push_back(i);
    return s;
  }
  /// x_i -> -x_{n+1-i}: the action of A -> -A^t on cohomology.
  static Substitution theta(int n) {
    Substitution s;
    for (int i = 0; i < n; ++i) s.perm.push_back(n - 1 - i);
    s.sign = -1;
    return s;
  }
};

/// Q[x_1..x_n]/(e_1..e_n) with its staircase basis x^a, a_i <= n-i.
/// Normal forms come from division by the Gröbner basis h_{n-i+1}(x_1, ..., x_i),
/// i = 1..n, for lex order with x_n > ... > x_1; leading terms x_i^{n-i+1}.
class CoinvariantAlgebra {
 public:
  using Exponents = std::vector<int>;
  using Polynomial = std::map<Exponents, Rational>;

  explicit CoinvariantAlgebra(int n) : n_(n) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "flag variety needs n >= 2, got " + std::to_string(n));
  }

  int n() const { return n_; }
  int top_degree() const { return n_ * (n_ - 1) / 2; }

  bool is_standard(const Exponents& a) const {
    for (int i = 0; i < n_; ++i)
      if (a[i] > n_ - 1 - i) return false;
    return true;
  }

  /// Staircase monomials of polynomial degree m, lexicographic.
  std::vector<Exponents> basis(int m) const {
    std::vector<Exponents> out;
    Exponents a(n_, 0);
    collect(0, m, a, out);
    return out;
  }

  /// Normal form of a monomial modulo the ideal.
  const Polynomial& normal_form(const Exponents& a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    Polynomial result;
    int i = 0;
    while (i < n_ && a[i] <= n_ - 1 - i) ++i;
    if (i == n_) {
      result[a] = 1;
    } else {
      // x_i^e ≡ x_i^e - h_e(x_0..x_i) = -(terms of h_e of lower x_i-degree)
      const int e = n_ - i;
      Exponents rest = a;
      rest[i] -= e;
      std::vector<int> vars;
      for (int v = 0; v <= i; ++v) vars.push_back(v);
      std::vector<std::vector<int>> terms;
      for_each_multiset(vars, static_cast<std::size_t>(e), [&](const std::vector<int>& m) { terms.push_back(m); });
      for (const auto& m : terms) {
        if (std::all_of(m.begin(), m.end(), [&](int v) { return v == i; })) continue;
        Exponents b = rest;
        for (int v : m) ++b[v];
        for (const auto& [mono, c] : normal_form(b)) result[mono] -= c;
      }
      std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
    }
    return memo_.emplace(a, std::move(result)).first->second;
  }

  /// Trace of the substitution on each graded piece, m = 0..n(n-1)/2.
  GradedTrace trace(const Substitution& s) {
    if (static_cast<int>(s.perm.size()) != n_) throw Error(ErrorKind::InvalidInput, "substitution has wrong size");
    if (s.sign != 1 && s.sign != -1) throw Error(ErrorKind::InvalidInput, "substitution sign must be ±1");
    auto sorted = s.perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n_; ++i)
      if (sorted[i] != i) throw Error(ErrorKind::InvalidInput, "substitution is not a permutation");
    GradedTrace out;
    for (int m = 0; m <= top_degree(); ++m) {
      const auto b = basis(m);
      Rational tr = 0;
      for (const auto& a : b) {
        Exponents image(n_, 0);
        for (int i = 0; i < n_; ++i) image[s.perm[i]] += a[i];
        const Polynomial& nf = normal_form(image);
        if (auto it = nf.find(a); it != nf.end()) tr += (m % 2 && s.sign < 0) ? Rational(-it->second) : it->second;
      }
      out.traces.push_back(tr);
      out.dims.push_back(static_cast<std::int64_t>(b.size()));
    }
    return out;
  }

 private:
  void collect(int i, int remaining, Exponents& a, std::vector<Exponents>& out) const {
    if (i == n_) {
      if (remaining == 0) out.push_back(a);
      return;
    }
    for (int e = std::min(remaining, n_ - 1 - i); e >= 0; --e) {
      a[i] = e;
      collect(i + 1, remaining - e, a, out);
    }
    a[i] = 0;
  }

  int n_;
  std::map<Exponents, Polynomial> memo_;
};

inline GradedTrace theta_trace(int n) {
  CoinvariantAlgebra alg(n);
  return alg.trace(Substitution::theta(n));
}

/// Signed-difference polynomial of the circle reduction of the flag variety,
/// obtained by exact division of the trace polynomial by 1 + t^2.
inline Poly predict_reduction_signature(int n) {
  return solve_reduction_signature(signed_betti(theta_trace(n)), TorusRank(1));
}

/// Structural checks of the data: θ(A) = -A^t keeps the spectrum (it is
/// negated, and symmetric), mu(A) = sum r_i a_ii is odd under θ, and the
/// weight r_i - r_j of entry (i,j) is the negative of that of entry (j,i),
/// so θ(t·A) = t^{-1}·θ(A).
inline bool check_moment_compat(const FlagSpec& spec) {
  spec.validate();
  const int n = spec.n;
  // θ acts on the diagonal (a_11..a_nn) by -I; mu∘θ has coefficients (-I)^t r.
  const Matrix on_diagonal = linalg::scale(Rational(-1), linalg::identity(n));
  const Vec pulled_back = linalg::apply(linalg::transpose(on_diagonal), spec.weights);
  if (pulled_back != linalg::scale(Rational(-1), Matrix{spec.weights})[0]) return false;
  // conjugation weight of entry (i,j) and θ moves entry (j,i) to (i,j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational w_ij = spec.weights[i] - spec.weights[j];
      const Rational w_ji = spec.weights[j] - spec.weights[i];
      if (w_ji != -w_ij) return false;
    }
  auto spec_sorted = spec.spectrum;
  std::sort(spec_sorted.begin(), spec_sorted.end());
  auto image = spec_sorted;
  for (auto& x : image) x = -x;
  std::sort(image.begin(), image.end());
  return image == spec_sorted;
}

}  // namespace invchar::flag
