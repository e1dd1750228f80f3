#pragma once

// Independent reference computations used only by the tests. They share the
// number types with the library but none of its algorithms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "invchar/polytope.hpp"
#include "invchar/rational_function.hpp"

namespace oracle {

using invchar::Facet;
using invchar::Matrix;
using invchar::Poly;
using invchar::Rational;
using invchar::RationalFunction;
using invchar::Vec;

// Gauss-Jordan solve of a square system; nullopt if singular.
inline std::optional<Vec> solve(Matrix a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct BruteVertex {
  Vec point;
  std::vector<std::size_t> tight;
};

// Every n-subset of facets, solved and filtered by feasibility.
inline std::vector<BruteVertex> brute_vertices(std::size_t n, const std::vector<Facet>& facets) {
  std::set<Vec> seen;
  std::vector<BruteVertex> out;
  const std::size_t m = facets.size();
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    Matrix a;
    Vec b;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) {
        a.push_back(facets[i].normal);
        b.push_back(facets[i].offset);
      }
    auto y = solve(a, b);
    if (!y) continue;
    bool ok = true;
    for (const auto& f : facets) ok = ok && dot(f.normal, *y) <= f.offset;
    if (!ok || !seen.insert(*y).second) continue;
    BruteVertex v{*y, {}};
    for (std::size_t i = 0; i < m; ++i)
      if (dot(facets[i].normal, *y) == facets[i].offset) v.tight.push_back(i);
    out.push_back(std::move(v));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  std::sort(out.begin(), out.end(), [](const BruteVertex& x, const BruteVertex& y) { return x.point < y.point; });
  return out;
}

// For a simple polytope: vertices u, v span an edge iff they share n-1 tight facets.
inline std::vector<std::pair<std::size_t, std::size_t>> brute_edges(std::size_t n, const std::vector<BruteVertex>& verts) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(verts[i].tight.begin(), verts[i].tight.end(), verts[j].tight.begin(), verts[j].tight.end(),
                            std::back_inserter(common));
      if (common.size() + 1 == n) edges.emplace_back(i, j);
    }
  return edges;
}

// h_k = number of vertices with exactly k incident edges pointing down for
// a generic linear functional xi.
inline std::vector<std::int64_t> morse_h_vector(std::size_t n, const std::vector<Facet>& facets, const Vec& xi) {
  const auto verts = brute_vertices(n, facets);
  const auto edges = brute_edges(n, verts);
  std::vector<int> down(verts.size(), 0);
  for (auto [i, j] : edges) {
    Vec e(n);
    for (std::size_t c = 0; c < n; ++c) e[c] = verts[j].point[c] - verts[i].point[c];
    const Rational s = dot(xi, e);
    if (s == 0) throw std::runtime_error("functional is not generic");
    if (s < 0) ++down[i];  // from i, moving to j decreases xi
    else ++down[j];
  }
  std::vector<std::int64_t> h(n + 1, 0);
  for (int d : down) ++h[d];
  return h;
}

// det over the field of rational functions by fraction elimination.
inline RationalFunction det(std::vector<std::vector<RationalFunction>> a) {
  const std::size_t n = a.size();
  RationalFunction result = RationalFunction::constant(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return {};
    if (p != c) {
      std::swap(a[p], a[c]);
      result = result * RationalFunction::constant(-1);
    }
    result = result * a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const RationalFunction f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return result;
}

// Graded trace of x_i -> -x_{n+1-i} on the coinvariant algebra: the trace on
// the polynomial ring, 1/det(1 - t^2 phi), divided by the trace on the
// invariants, prod_j 1/(1 - (-1)^j t^{2j}).
inline RationalFunction molien_theta_trace(int n) {
  std::vector<std::vector<RationalFunction>> m(n, std::vector<RationalFunction>(n));
  for (int i = 0; i < n; ++i) {
    m[i][i] = RationalFunction::constant(1);
    // phi e_i = -e_{n-1-i}; column i of phi
    m[n - 1 - i][i] = m[n - 1 - i][i] + RationalFunction(Poly::monomial(Rational(1), 2));
  }
  RationalFunction invariants = RationalFunction::constant(1);
  for (int j = 1; j <= n; ++j) invariants = invariants * RationalFunction(Poly::binomial_term(j % 2 ? 1 : -1, 2 * j));
  return invariants / det(m);
}

// Power series of p/q by the recurrence q_0 c_i = p_i - sum_{j>=1} q_j c_{i-j}.
inline std::vector<Rational> series(const Poly& p, const Poly& q, int order) {
  std::vector<Rational> c(order + 1);
  for (int i = 0; i <= order; ++i) {
    Rational s = p[i];
    for (int j = 1; j <= i; ++j) s -= q[j] * c[i - j];
    c[i] = s / q[0];
  }
  return c;
}

inline Rational choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Graded dimensions of the ± parts of H(M) ⊗ C[u_1..u_k], u_j odd of degree 2,
// by direct counting up to `order`.
inline std::pair<std::vector<Rational>, std::vector<Rational>> equivariant_counts(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& table, int k, int order) {
  std::vector<Rational> plus(order + 1), minus(order + 1);
  for (int i = 0; i < static_cast<int>(table.size()); ++i)
    for (int j = 0; i + 2 * j <= order; ++j) {
      const Rational monomials = choose(j + k - 1, k - 1);
      const auto [hp, hm] = table[i];
      const bool even = j % 2 == 0;
      plus[i + 2 * j] += monomials * Rational(even ? hp : hm);
      minus[i + 2 * j] += monomials * Rational(even ? hm : hp);
    }
  return {plus, minus};
}

inline Matrix random_unimodular(std::size_t n, std::mt19937& rng, int steps = 12) {
  Matrix g(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  if (n < 2) {
    if (n == 1 && rng() % 2) g[0][0] = -1;
    return g;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) j = (j + 1) % n;
    const int c = mult(rng);
    for (std::size_t r = 0; r < n; ++r) g[r][i] += c * g[r][j];  // column op
  }
  return g;
}

// The cube |y_i| <= 3 cut by random integer halfspaces, kept only when the
// result is simple. Deterministic for a given seed.
inline std::vector<invchar::HPolytope> random_simple_polytopes(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dim(2, 4), coef(-2, 2), cuts(1, 3), off(2, 6);
  std::vector<invchar::HPolytope> out;
  while (out.size() < count) {
    const int n = dim(rng);
    std::vector<Facet> f;
    for (int i = 0; i < n; ++i) {
      Vec a(n), b(n);
      a[i] = 1;
      b[i] = -1;
      f.push_back({a, 3});
      f.push_back({b, 3});
    }
    const int c = cuts(rng);
    for (int j = 0; j < c; ++j) {
      Vec a(n);
      for (auto& x : a) x = coef(rng);
      f.push_back({a, off(rng)});
    }
    try {
      auto p = invchar::HPolytope::make_pruned(n, f);
      if (invchar::is_simple(p)) out.push_back(std::move(p));
    } catch (const invchar::Error&) {
    }
  }
  return out;
}

}  // namespace oracle
