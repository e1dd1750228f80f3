#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "invchar/linalg.hpp"

namespace invchar {

/// Complete simplicial fan: primitive integer rays and maximal cones given
/// as sorted ray-index sets of size `rank`.
struct SimplicialFan {
  std::size_t rank = 0;
  std::vector<Vec> rays;
  std::vector<std::vector<std::size_t>> cones;

  /// Throws IncompleteFan unless every cone is simplicial of full rank and
  /// every ridge separates exactly two cones lying on opposite sides of it.
  void validate() const {
    using linalg::dot;
    for (const auto& r : rays) {
      if (r.size() != rank) throw Error(ErrorKind::IncompleteFan, "ray of wrong length");
      if (linalg::is_zero(r)) throw Error(ErrorKind::IncompleteFan, "zero ray");
      for (const auto& x : r)
        if (!is_integer(x)) throw Error(ErrorKind::IncompleteFan, "non-integral ray " + linalg::to_string(r));
      if (linalg::primitive(r) != r) throw Error(ErrorKind::IncompleteFan, "ray " + linalg::to_string(r) + " is not primitive");
    }
    if (cones.empty()) throw Error(ErrorKind::IncompleteFan, "fan has no cones");
    std::set<std::vector<std::size_t>> seen;
    for (const auto& c : cones) {
      if (c.size() != rank) throw Error(ErrorKind::IncompleteFan, "cone is not of full dimension");
      if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
        throw Error(ErrorKind::IncompleteFan, "cone ray indices must be sorted and distinct");
      for (auto i : c)
        if (i >= rays.size()) throw Error(ErrorKind::IncompleteFan, "cone references a missing ray");
      Matrix gens;
      for (auto i : c) gens.push_back(rays[i]);
      if (linalg::rank(gens) != rank) throw Error(ErrorKind::IncompleteFan, "cone rays are linearly dependent");
      if (!seen.insert(c).second) throw Error(ErrorKind::IncompleteFan, "duplicate cone");
    }
    if (rank == 0) {
      if (cones.size() != 1) throw Error(ErrorKind::IncompleteFan, "rank-0 fan must have exactly one cone");
      return;
    }
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges;  // ridge -> opposite rays
    for (const auto& c : cones)
      for (std::size_t drop = 0; drop < c.size(); ++drop) {
        std::vector<std::size_t> ridge;
        for (std::size_t i = 0; i < c.size(); ++i)
          if (i != drop) ridge.push_back(c[i]);
        ridges[ridge].push_back(c[drop]);
      }
    for (const auto& [ridge, apexes] : ridges) {
      if (apexes.size() != 2) throw Error(ErrorKind::IncompleteFan, "a ridge lies in " + std::to_string(apexes.size()) + " cones");
      Matrix span;
      for (auto i : ridge) span.push_back(rays[i]);
      Vec normal = ridge_normal(span);
      const int s0 = sign(dot(normal, rays[apexes[0]]));
      const int s1 = sign(dot(normal, rays[apexes[1]]));
      if (s0 == 0 || s1 == 0 || s0 == s1)
        throw Error(ErrorKind::IncompleteFan, "adjacent cones overlap across a ridge");
    }
  }

  /// Ray indices whose support lies in some cone, i.e. the faces of the fan.
  bool is_face(const std::vector<std::size_t>& sorted_support) const {
    for (const auto& c : cones)
      if (std::includes(c.begin(), c.end(), sorted_support.begin(), sorted_support.end())) return true;
    return false;
  }

 private:
  // A nonzero functional vanishing on the (rank-1)-dimensional span.
  Vec ridge_normal(const Matrix& span) const {
    if (span.empty()) return Vec{Rational(1)};
    linalg::Echelon e = linalg::rref(span, rank);
    std::vector<bool> is_pivot(rank, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::size_t free = 0;
    while (is_pivot[free]) ++free;
    Vec w(rank);
    w[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) w[e.pivots[r]] = -e.rows[r][free];
    return w;
  }
};

/// Lattice involution ψ of a fan together with the ray permutation it induces.
struct FanAutomorphism {
  Matrix matrix;
  std::vector<std::size_t> ray_permutation;

  /// Checks ψ ∈ GL(n,Z), ψ² = I, rays map onto rays exactly and cones onto
  /// cones. Throws InvalidAutomorphism otherwise.
  static FanAutomorphism make(const SimplicialFan& fan, const Matrix& psi) {
    const std::size_t n = fan.rank;
    if (psi.size() != n) throw Error(ErrorKind::InvalidAutomorphism, "matrix has wrong size");
    for (const auto& row : psi)
      if (row.size() != n) throw Error(ErrorKind::InvalidAutomorphism, "matrix has wrong size");
    if (!linalg::is_integral(psi)) throw Error(ErrorKind::InvalidAutomorphism, "matrix is not integral");
    if (linalg::mul(psi, psi) != linalg::identity(n)) throw Error(ErrorKind::InvalidAutomorphism, "matrix is not an involution");
    FanAutomorphism a;
    a.matrix = psi;
    for (const auto& r : fan.rays) {
      Vec image = linalg::apply(psi, r);
      auto it = std::find(fan.rays.begin(), fan.rays.end(), image);
      if (it == fan.rays.end())
        throw Error(ErrorKind::InvalidAutomorphism, "ray " + linalg::to_string(r) + " maps to non-ray " + linalg::to_string(image));
      a.ray_permutation.push_back(static_cast<std::size_t>(it - fan.rays.begin()));
    }
    std::set<std::vector<std::size_t>> cones(fan.cones.begin(), fan.cones.end());
    for (const auto& c : fan.cones) {
      std::vector<std::size_t> img;
      for (auto i : c) img.push_back(a.ray_permutation[i]);
      std::sort(img.begin(), img.end());
      if (!cones.count(img)) throw Error(ErrorKind::InvalidAutomorphism, "a maximal cone maps to a non-cone");
    }
    return a;
  }

  static FanAutomorphism identity(const SimplicialFan& fan) { return make(fan, linalg::identity(fan.rank)); }
  static FanAutomorphism negation(const SimplicialFan& fan) {
    return make(fan, linalg::scale(Rational(-1), linalg::identity(fan.rank)));
  }
};

}  // namespace invchar
