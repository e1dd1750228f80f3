#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invchar/combinatorics.hpp"
#include "invchar/fan.hpp"
#include "invchar/linalg.hpp"
#include "invchar/poly.hpp"

namespace invchar {

/// Trace of an involution on each even cohomology group H^{2i}, i = 0..n.
struct GradedTrace {
  std::vector<Rational> traces;
  std::vector<std::int64_t> dims;

  std::size_t complex_dim() const { return traces.empty() ? 0 : traces.size() - 1; }

  /// sum_i trace_i t^{2i}
  Poly trace_poly() const {
    std::vector<Rational> c(2 * traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) c[2 * i] = traces[i];
    return Poly(std::move(c));
  }
};

/// (h^{i,+}, h^{i,-}) for cohomological degrees i = 0..2n.
struct SignedBettiTable {
  struct Entry {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const SignedBettiTable&, const SignedBettiTable&) = default;

  /// The point: H^0 = C with trivial action.
  static SignedBettiTable point() { return SignedBettiTable{{Entry{1, 0}}}; }

  int top_degree() const { return static_cast<int>(entries.size()) - 1; }

  Entry at(int degree) const {
    if (degree < 0 || degree > top_degree()) return {};
    return entries[degree];
  }

  Poly plus_poly() const { return collect([](const Entry& e) { return e.plus; }); }
  Poly minus_poly() const { return collect([](const Entry& e) { return e.minus; }); }
  /// sum_i (h^{i,+} - h^{i,-}) t^i
  Poly signed_poly() const { return collect([](const Entry& e) { return e.plus - e.minus; }); }
  Poly betti_poly() const { return collect([](const Entry& e) { return e.plus + e.minus; }); }

  /// Table of the same space with degrees reflected i -> top - i.
  SignedBettiTable reversed() const {
    SignedBettiTable r{entries};
    std::reverse(r.entries.begin(), r.entries.end());
    return r;
  }

 private:
  template <class F>
  Poly collect(F f) const {
    std::vector<Rational> c;
    for (const auto& e : entries) c.emplace_back(f(e));
    return Poly(std::move(c));
  }
};

namespace detail {

using Monomial = std::vector<std::size_t>;  // non-decreasing ray indices

// Monomials of degree d whose support is a face of the fan: a basis of the
// degree-d piece of the Stanley-Reisner ring.
inline std::vector<Monomial> sr_monomials(const SimplicialFan& fan, std::size_t d) {
  std::set<Monomial> out;
  for (const auto& cone : fan.cones) for_each_multiset(cone, d, [&](const Monomial& m) { out.insert(m); });
  return {out.begin(), out.end()};
}

inline Monomial support(const Monomial& m) {
  Monomial s = m;
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Monomial times(const Monomial& m, std::size_t v) {
  Monomial r = m;
  r.insert(std::upper_bound(r.begin(), r.end(), v), v);
  return r;
}

// Degree-d piece of Q[x]/(I_SR + lsop): the relation rows are θ_j · m for
// monomials m of degree d-1, with non-face terms dropped.
struct GradedPiece {
  std::vector<Monomial> basis;  // columns
  std::map<Monomial, std::size_t> index;
  linalg::Echelon relations;

  std::int64_t dim() const { return static_cast<std::int64_t>(basis.size() - relations.rank()); }
};

inline GradedPiece graded_piece(const SimplicialFan& fan, std::size_t d, const Matrix& lsop_rays) {
  GradedPiece g;
  g.basis = sr_monomials(fan, d);
  for (std::size_t i = 0; i < g.basis.size(); ++i) g.index[g.basis[i]] = i;
  Matrix rows;
  if (d > 0) {
    const auto lower = sr_monomials(fan, d - 1);
    for (const auto& m : lower)
      for (std::size_t j = 0; j < fan.rank; ++j) {
        Vec row(g.basis.size());
        bool nonzero = false;
        for (std::size_t v = 0; v < fan.rays.size(); ++v) {
          const Rational& coef = lsop_rays[v][j];
          if (coef == 0) continue;
          auto prod = times(m, v);
          auto it = g.index.find(prod);
          if (it == g.index.end()) continue;  // non-face monomial, zero in the SR ring
          row[it->second] += coef;
          nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  g.relations = linalg::rref(std::move(rows), g.basis.size());
  return g;
}

inline Matrix lsop_rays(const SimplicialFan& fan, const Matrix* change) {
  Matrix rays = fan.rays;
  if (change) {
    if (change->size() != fan.rank) throw Error(ErrorKind::InvalidInput, "lsop change of basis has wrong size");
    for (auto& r : rays) r = linalg::apply(*change, r);
  }
  return rays;
}

}  // namespace detail

/// dim_Q of the degree-2i piece of Q[x_rays]/(I_SR + lsop), i = 0..n.
inline std::vector<std::int64_t> sr_cohomology_dims(const SimplicialFan& fan) {
  fan.validate();
  const Matrix rays = detail::lsop_rays(fan, nullptr);
  std::vector<std::int64_t> dims;
  for (std::size_t d = 0; d <= fan.rank; ++d) dims.push_back(detail::graded_piece(fan, d, rays).dim());
  return dims;
}

struct TraceOptions {
  /// Replace the lsop θ_j by sum_k G_jk θ_k. The quotient, and hence the
  /// trace, does not depend on this choice.
  const Matrix* lsop_change = nullptr;
};

/// Trace of x_v -> x_{ψ(v)} on each graded piece of the Stanley-Reisner
/// presentation of H^*(X_fan; Q).
inline GradedTrace graded_trace(const SimplicialFan& fan, const FanAutomorphism& psi, TraceOptions opts = {}) {
  fan.validate();
  if (psi.ray_permutation.size() != fan.rays.size())
    throw Error(ErrorKind::InvalidAutomorphism, "automorphism does not match the fan");
  if (opts.lsop_change) {
    auto inv = linalg::inverse(*opts.lsop_change);
    if (!inv) throw Error(ErrorKind::InvalidInput, "lsop change of basis is singular");
  }
  const Matrix rays = detail::lsop_rays(fan, opts.lsop_change);
  GradedTrace out;
  for (std::size_t d = 0; d <= fan.rank; ++d) {
    const auto piece = detail::graded_piece(fan, d, rays);
    const auto& rel = piece.relations;
    std::vector<std::optional<std::size_t>> pivot_row(piece.basis.size());
    for (std::size_t r = 0; r < rel.rank(); ++r) pivot_row[rel.pivots[r]] = r;
    Rational tr = 0;
    for (std::size_t b = 0; b < piece.basis.size(); ++b) {
      if (pivot_row[b]) continue;  // standard monomials are the non-pivot columns
      detail::Monomial image;
      for (auto v : piece.basis[b]) image.push_back(psi.ray_permutation[v]);
      std::sort(image.begin(), image.end());
      auto it = piece.index.find(image);
      if (it == piece.index.end()) throw Error(ErrorKind::InvalidAutomorphism, "automorphism maps a face to a non-face");
      const std::size_t col = it->second;
      if (!pivot_row[col]) {
        if (col == b) tr += 1;
      } else {
        tr -= rel.rows[*pivot_row[col]][b];
      }
    }
    out.traces.push_back(tr);
    out.dims.push_back(piece.dim());
  }
  if (detail::graded_piece(fan, fan.rank + 1, rays).dim() != 0)
    throw Error(ErrorKind::IncompleteFan, "cohomology does not vanish above the top degree");
  auto expected = sr_cohomology_dims(fan);
  if (expected != out.dims) throw Error(ErrorKind::IncompleteFan, "graded dimensions depend on the lsop");
  return out;
}

/// h^{2i,±} = (dim_i ± trace_i)/2; odd degrees vanish.
inline SignedBettiTable signed_betti(const GradedTrace& trace) {
  SignedBettiTable t;
  const std::size_t n = trace.complex_dim();
  t.entries.assign(2 * n + 1, {});
  for (std::size_t i = 0; i <= n; ++i) {
    const Rational dim(trace.dims[i]);
    const Rational plus = (dim + trace.traces[i]) / 2;
    const Rational minus = (dim - trace.traces[i]) / 2;
    if (!is_integer(plus) || plus < 0 || minus < 0)
      throw Error(ErrorKind::NonIntegralSplit, "trace " + trace.traces[i].str() + " on a space of dimension " +
                                                   std::to_string(trace.dims[i]) + " is not that of an involution");
    t.entries[2 * i] = {plus.convert_to<std::int64_t>(), minus.convert_to<std::int64_t>()};
  }
  return t;
}

}  // namespace invchar
