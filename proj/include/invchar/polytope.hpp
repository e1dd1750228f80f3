#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "invchar/combinatorics.hpp"
#include "invchar/fan.hpp"
#include "invchar/linalg.hpp"
#include "invchar/poly.hpp"

namespace invchar {

/// Half-space {y : <normal, y> <= offset}.
struct Facet {
  Vec normal;
  Rational offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Vertex {
  Vec point;
  std::vector<std::size_t> tight;  // indices of facets through the point, ascending
};

namespace detail {

inline bool feasible(const std::vector<Facet>& facets, const Vec& y) {
  for (const auto& f : facets)
    if (linalg::dot(f.normal, y) > f.offset) return false;
  return true;
}

inline std::vector<std::size_t> tight_set(const std::vector<Facet>& facets, const Vec& y) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (linalg::dot(facets[i].normal, y) == facets[i].offset) t.push_back(i);
  return t;
}

// The recession cone {d : <a_i, d> <= 0} of a polyhedron with a vertex is
// pointed; it is nonzero iff one of its extreme rays is cut out by n-1
// independent constraints.
inline bool has_recession_direction(std::size_t n, const std::vector<Facet>& facets) {
  if (n == 0) return false;
  bool found = false;
  for_each_combination(facets.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    Matrix rows;
    for (auto i : idx) rows.push_back(facets[i].normal);
    Vec d(n);
    if (rows.empty()) {
      d[0] = 1;
    } else {
      linalg::Echelon e = linalg::rref(rows, n);
      if (e.rank() != n - 1) return true;
      std::vector<bool> piv(n, false);
      for (auto p : e.pivots) piv[p] = true;
      std::size_t free = 0;
      while (piv[free]) ++free;
      d[free] = 1;
      for (std::size_t r = 0; r < e.rank(); ++r) d[e.pivots[r]] = -e.rows[r][free];
    }
    for (int s : {1, -1}) {
      bool ok = true;
      for (const auto& f : facets)
        if (s * linalg::dot(f.normal, d) > 0) {
          ok = false;
          break;
        }
      if (ok) {
        found = true;
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace detail

/// All vertices of {y : A y <= b}, found by solving every n-subset of
/// facets exactly and keeping the feasible solutions. Lexicographic order.
inline std::vector<Vertex> enumerate_vertices(std::size_t n, const std::vector<Facet>& facets) {
  for (const auto& f : facets)
    if (f.normal.size() != n) throw Error(ErrorKind::InvalidInput, "facet normal has wrong dimension");
  if (n == 0) {
    for (const auto& f : facets)
      if (f.offset < 0) throw Error(ErrorKind::Degenerate, "empty 0-dimensional polytope");
    return {Vertex{Vec{}, detail::tight_set(facets, Vec{})}};
  }
  if (facets.size() < n + 1)
    throw Error(ErrorKind::Degenerate, "need at least " + std::to_string(n + 1) + " facets, got " + std::to_string(facets.size()));
  std::set<Vec> points;
  for_each_combination(facets.size(), n, [&](const std::vector<std::size_t>& idx) {
    Matrix a;
    Vec b;
    for (auto i : idx) {
      a.push_back(facets[i].normal);
      b.push_back(facets[i].offset);
    }
    if (auto y = linalg::solve_unique(a, b); y && detail::feasible(facets, *y)) points.insert(*y);
    return true;
  });
  if (points.empty()) throw Error(ErrorKind::Degenerate, "polytope is empty or has no vertices");
  if (detail::has_recession_direction(n, facets)) throw Error(ErrorKind::Unbounded, "polyhedron is unbounded");
  std::vector<Vertex> out;
  for (const auto& p : points) out.push_back(Vertex{p, detail::tight_set(facets, p)});
  return out;
}

struct Face {
  int dim = 0;
  std::vector<std::size_t> vertices;  // ascending vertex indices
  std::vector<std::size_t> facets;    // ascending indices of facets containing the face
};

/// Nonempty faces ordered by (dim, vertex set); the last face is P itself.
struct FaceLattice {
  std::vector<Face> faces;
  /// covers[i]: indices of faces of dimension dim+1 containing face i.
  std::vector<std::vector<std::size_t>> covers;

  std::vector<std::size_t> of_dim(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].dim == d) out.push_back(i);
    return out;
  }
};

class HPolytope;

struct AffineInvolution;

/// Bounded, full-dimensional polytope {y : <a_i, y> <= b_i} without redundant
/// inequalities. Vertices and the face lattice are computed on construction.
class HPolytope {
 public:
  /// Validates the inequality system; throws Unbounded, Degenerate or RedundantFacet.
  static HPolytope make(std::size_t dim, std::vector<Facet> facets) {
    HPolytope p(dim, std::move(facets));
    p.vertices_ = enumerate_vertices(p.dim_, p.facets_);
    p.check_full_dimensional();
    p.build_faces();
    p.check_irredundant();
    return p;
  }

  /// Like make(), but silently drops redundant or duplicate inequalities
  /// (keeping the first representative of each facet) and trivially
  /// satisfied zero rows.
  static HPolytope make_pruned(std::size_t dim, std::vector<Facet> facets) {
    std::vector<Facet> kept;
    for (auto& f : facets) {
      if (linalg::is_zero(f.normal)) {
        if (f.offset < 0) throw Error(ErrorKind::Degenerate, "inconsistent constant inequality");
        continue;
      }
      kept.push_back(std::move(f));
    }
    auto verts = enumerate_vertices(dim, kept);
    std::vector<Vec> pts;
    for (const auto& v : verts) pts.push_back(v.point);
    if (linalg::affine_rank(pts) != static_cast<int>(dim))
      throw Error(ErrorKind::Degenerate, "polytope is not full-dimensional");
    std::vector<Facet> facets_out;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<std::size_t> on;
      std::vector<Vec> on_pts;
      for (std::size_t v = 0; v < verts.size(); ++v)
        if (std::binary_search(verts[v].tight.begin(), verts[v].tight.end(), i)) {
          on.push_back(v);
          on_pts.push_back(verts[v].point);
        }
      if (linalg::affine_rank(on_pts) != static_cast<int>(dim) - 1) continue;
      if (!seen.insert(on).second) continue;
      facets_out.push_back(kept[i]);
    }
    return make(dim, std::move(facets_out));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const FaceLattice& face_lattice() const { return lattice_; }

  std::vector<Vec> vertex_points() const {
    std::vector<Vec> pts;
    for (const auto& v : vertices_) pts.push_back(v.point);
    return pts;
  }

  bool contains(const Vec& y) const { return detail::feasible(facets_, y); }

  /// Index of the vertex at `point`, if any.
  std::optional<std::size_t> find_vertex(const Vec& point) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), point,
                               [](const Vertex& v, const Vec& p) { return v.point < p; });
    if (it == vertices_.end() || it->point != point) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  /// Image under y -> A y + c for invertible A.
  HPolytope transformed(const Matrix& a, const Vec& c) const {
    auto inv = linalg::inverse(a);
    if (!inv) throw Error(ErrorKind::InvalidInput, "transformation is singular");
    // <n, y> <= b with y = A^{-1}(x - c)  <=>  <A^{-T} n, x> <= b + <A^{-T} n, c>
    Matrix inv_t = linalg::transpose(*inv);
    std::vector<Facet> out;
    for (const auto& f : facets_) {
      Vec n2 = linalg::apply(inv_t, f.normal);
      out.push_back(Facet{n2, f.offset + linalg::dot(n2, c)});
    }
    return make(dim_, std::move(out));
  }

  HPolytope translated(const Vec& c) const { return transformed(linalg::identity(dim_), c); }

 private:
  HPolytope(std::size_t dim, std::vector<Facet> facets) : dim_(dim), facets_(std::move(facets)) {}

  void check_full_dimensional() const {
    if (linalg::affine_rank(vertex_points()) != static_cast<int>(dim_))
      throw Error(ErrorKind::Degenerate, "polytope is not full-dimensional");
  }

  void check_irredundant() const {
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      auto vs = facet_vertices(i);
      std::vector<Vec> pts;
      for (auto v : vs) pts.push_back(vertices_[v].point);
      if (linalg::affine_rank(pts) != static_cast<int>(dim_) - 1 || !seen.insert(vs).second)
        throw Error(ErrorKind::RedundantFacet, "inequality " + std::to_string(i) + " does not define a facet");
    }
  }

  std::vector<std::size_t> facet_vertices(std::size_t i) const {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (std::binary_search(vertices_[v].tight.begin(), vertices_[v].tight.end(), i)) vs.push_back(v);
    return vs;
  }

  // Faces are the nonempty intersections of facets, plus P itself.
  void build_faces() {
    std::vector<std::vector<std::size_t>> facet_sets;
    for (std::size_t i = 0; i < facets_.size(); ++i) facet_sets.push_back(facet_vertices(i));
    std::set<std::vector<std::size_t>> sets;
    std::deque<std::vector<std::size_t>> queue;
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    sets.insert(all);
    for (const auto& s : facet_sets)
      if (!s.empty() && sets.insert(s).second) queue.push_back(s);
    while (!queue.empty()) {
      auto cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& s : facet_sets) {
        std::vector<std::size_t> meet;
        std::set_intersection(cur.begin(), cur.end(), s.begin(), s.end(), std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) queue.push_back(std::move(meet));
      }
    }
    std::vector<Face> faces;
    for (const auto& s : sets) {
      Face f;
      f.vertices = s;
      std::vector<Vec> pts;
      for (auto v : s) pts.push_back(vertices_[v].point);
      f.dim = linalg::affine_rank(pts);
      for (std::size_t i = 0; i < facets_.size(); ++i)
        if (std::includes(facet_sets[i].begin(), facet_sets[i].end(), s.begin(), s.end())) f.facets.push_back(i);
      faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
      return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
    });
    lattice_.faces = std::move(faces);
    const auto& fs = lattice_.faces;
    lattice_.covers.assign(fs.size(), {});
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (fs[j].dim == fs[i].dim + 1 &&
            std::includes(fs[j].vertices.begin(), fs[j].vertices.end(), fs[i].vertices.begin(), fs[i].vertices.end()))
          lattice_.covers[i].push_back(j);
  }

  std::size_t dim_;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
  FaceLattice lattice_;
};

inline const FaceLattice& build_face_lattice(const HPolytope& p) { return p.face_lattice(); }

/// (f_0, ..., f_{n-1}).
inline std::vector<std::int64_t> f_vector(const HPolytope& p) {
  std::vector<std::int64_t> f(p.dim(), 0);
  for (const auto& face : p.face_lattice().faces)
    if (face.dim < static_cast<int>(p.dim())) ++f[face.dim];
  return f;
}

/// Every vertex lies on exactly n facets.
inline bool is_simple(const HPolytope& p) {
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const Vertex& v) { return v.tight.size() == p.dim(); });
}

/// h-vector of a simple polytope: sum_i f_i (t-1)^i = sum_k h_k t^{n-k}.
inline std::vector<std::int64_t> h_vector(const HPolytope& p) {
  if (!is_simple(p)) throw Error(ErrorKind::NotSimple, "h-vector requested for a non-simple polytope");
  const std::size_t n = p.dim();
  auto f = f_vector(p);
  f.push_back(1);
  const Poly t_minus_one{Rational(-1), Rational(1)};
  Poly acc;
  for (std::size_t i = 0; i <= n; ++i) acc += Rational(f[i]) * t_minus_one.pow(static_cast<unsigned>(i));
  std::vector<std::int64_t> h(n + 1);
  for (std::size_t k = 0; k <= n; ++k) h[k] = acc[n - k].convert_to<std::int64_t>();
  return h;
}

/// Center c with 2c - V = V, when the vertex set is centrally symmetric.
inline std::optional<Vec> detect_central_symmetry(const HPolytope& p) {
  const std::size_t n = p.dim();
  Vec c(n);
  for (const auto& v : p.vertices()) c = linalg::operator+(c, v.point);
  const Rational inv = Rational(1) / Rational(static_cast<long>(p.vertices().size()));
  for (auto& x : c) x *= inv;
  for (const auto& v : p.vertices()) {
    Vec mirror = linalg::operator-(Rational(2) * c, v.point);
    if (!p.find_vertex(mirror)) return std::nullopt;
  }
  return c;
}

/// Rays are the primitive inward facet normals (ray i belongs to facet i);
/// maximal cones are the tight facet sets of the vertices.
inline SimplicialFan normal_fan(const HPolytope& p) {
  if (!is_simple(p)) throw Error(ErrorKind::NotSimple, "normal fan of a non-simple polytope is not simplicial");
  SimplicialFan fan;
  fan.rank = p.dim();
  for (const auto& f : p.facets()) fan.rays.push_back(linalg::primitive(Rational(-1) * f.normal));
  for (const auto& v : p.vertices()) fan.cones.push_back(v.tight);
  std::sort(fan.cones.begin(), fan.cones.end());
  return fan;
}

/// y -> L y + c with L^2 = I and L c + c = 0.
struct AffineInvolution {
  Matrix linear;
  Vec translation;

  static AffineInvolution negation(std::size_t n) {
    return {linalg::scale(Rational(-1), linalg::identity(n)), Vec(n)};
  }

  Vec operator()(const Vec& y) const { return linalg::operator+(linalg::apply(linear, y), translation); }

  std::size_t dim() const { return linear.size(); }

  void validate() const {
    const std::size_t n = linear.size();
    for (const auto& row : linear)
      if (row.size() != n) throw Error(ErrorKind::IncompatibleInvolution, "linear part is not square");
    if (translation.size() != n) throw Error(ErrorKind::IncompatibleInvolution, "translation has wrong length");
    if (linalg::mul(linear, linear) != linalg::identity(n))
      throw Error(ErrorKind::IncompatibleInvolution, "linear part does not square to the identity");
    if (!linalg::is_zero(linalg::operator+(linalg::apply(linear, translation), translation)))
      throw Error(ErrorKind::IncompatibleInvolution, "map does not square to the identity (L c + c != 0)");
  }

  /// The unique-up-to-kernel fixed point c/2.
  Vec fixed_point() const { return Rational(1, 2) * translation; }

  bool preserves(const HPolytope& p) const {
    for (const auto& v : p.vertices())
      if (!p.find_vertex((*this)(v.point))) return false;
    return true;
  }
};

/// Rows of `projection` span the Lie algebra of a subtorus T' (k' x n, full rank).
struct SubtorusSpec {
  Matrix projection;

  std::size_t rank() const { return projection.size(); }

  void validate(const AffineInvolution& inv) const {
    const std::size_t n = inv.dim();
    for (const auto& row : projection)
      if (row.size() != n) throw Error(ErrorKind::InvalidInput, "subtorus row has wrong length");
    if (projection.empty() || linalg::rank(projection) != projection.size())
      throw Error(ErrorKind::InvalidInput, "subtorus rows must be linearly independent");
    if (linalg::mul(projection, inv.linear) != linalg::scale(Rational(-1), projection))
      throw Error(ErrorKind::IncompatibleInvolution, "involution does not act by -1 on the subtorus (pi L != -pi)");
  }

  Vec project(const Vec& y) const { return linalg::apply(projection, y); }
};

struct RegularityReport {
  bool regular = true;
  std::optional<Face> offending;
  std::string diagnostic;
};

namespace detail {

// Whether target lies in conv(points); Caratheodory over affinely
// independent subsets of size <= dim+1.
inline bool in_convex_hull(std::vector<Vec> points, const Vec& target) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t d = target.size();
  const std::size_t max_size = std::min(points.size(), d + 1);
  bool found = false;
  for (std::size_t s = 1; s <= max_size && !found; ++s) {
    for_each_combination(points.size(), s, [&](const std::vector<std::size_t>& idx) {
      // sum λ_i p_i = target, sum λ_i = 1
      Matrix a(d + 1, Vec(s));
      Vec b(d + 1);
      for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t r = 0; r < d; ++r) a[r][j] = points[idx[j]][r];
        a[d][j] = 1;
      }
      for (std::size_t r = 0; r < d; ++r) b[r] = target[r];
      b[d] = 1;
      auto lam = linalg::solve_unique(a, b);
      if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& x) { return x >= 0; })) {
        found = true;
        return false;
      }
      return true;
    });
  }
  return found;
}

}  // namespace detail

/// Zero is a regular value of the reduced moment map iff no face F meeting
/// the slice {pi y = pi c/2} has pi(dir F) of rank < k'. Faces are scanned by
/// increasing dimension, so the reported face meets the slice in its
/// relative interior.
inline RegularityReport check_regular_value(const HPolytope& p, const AffineInvolution& inv, const SubtorusSpec& sub) {
  const Vec level = sub.project(inv.fixed_point());
  const std::size_t k = sub.rank();
  const auto& verts = p.vertices();
  for (const auto& face : p.face_lattice().faces) {
    Matrix dirs;
    for (std::size_t i = 1; i < face.vertices.size(); ++i)
      dirs.push_back(sub.project(linalg::operator-(verts[face.vertices[i]].point, verts[face.vertices[0]].point)));
    if (linalg::rank(dirs) >= k) continue;
    std::vector<Vec> images;
    for (auto v : face.vertices) images.push_back(sub.project(verts[v].point));
    if (!detail::in_convex_hull(images, level)) continue;
    RegularityReport r;
    r.regular = false;
    r.offending = face;
    std::string vs;
    for (auto v : face.vertices) vs += " " + linalg::to_string(verts[v].point);
    r.diagnostic = "face of dimension " + std::to_string(face.dim) + " with vertices" + vs +
                   " meets the slice but its directions project to rank " + std::to_string(linalg::rank(dirs)) +
                   " < " + std::to_string(k);
    return r;
  }
  return {};
}

struct SliceResult {
  HPolytope reduced;
  AffineInvolution involution;  // ι_Q in slice coordinates
  Matrix basis;                 // rows: integral basis of ker(pi), slice directions
  Vec base_point;               // the θ̃-fixed point c/2; y = base_point + basis^T z
};

/// Slices P at the θ̃-fixed level of pi and expresses the result in integral
/// coordinates on ker(pi).
inline SliceResult slice_reduce(const HPolytope& p, const AffineInvolution& inv, const SubtorusSpec& sub) {
  inv.validate();
  if (inv.dim() != p.dim()) throw Error(ErrorKind::IncompatibleInvolution, "involution dimension differs from polytope");
  if (!inv.preserves(p)) throw Error(ErrorKind::IncompatibleInvolution, "involution does not preserve the polytope");
  sub.validate(inv);
  if (auto reg = check_regular_value(p, inv, sub); !reg.regular)
    throw Error(ErrorKind::RegularValueViolation, reg.diagnostic);

  const std::size_t n = p.dim();
  Matrix basis = linalg::integer_kernel_basis(sub.projection, n);
  const std::size_t m = basis.size();
  const Vec base = inv.fixed_point();
  std::vector<Facet> facets;
  for (const auto& f : p.facets()) {
    Vec normal(m);
    for (std::size_t j = 0; j < m; ++j) normal[j] = linalg::dot(f.normal, basis[j]);
    facets.push_back(Facet{std::move(normal), f.offset - linalg::dot(f.normal, base)});
  }
  HPolytope q = HPolytope::make_pruned(m, std::move(facets));
  if (!is_simple(q)) throw Error(ErrorKind::SliceNotSimple, "the reduced polytope is not simple");

  // L b_j = sum_l M_{lj} b_l
  Matrix bt = linalg::transpose(basis);
  Matrix lin(m, Vec(m));
  for (std::size_t j = 0; j < m; ++j) {
    auto col = linalg::solve_unique(bt, linalg::apply(inv.linear, basis[j]));
    if (!col) throw Error(ErrorKind::IncompatibleInvolution, "involution does not preserve the slice directions");
    for (std::size_t l = 0; l < m; ++l) lin[l][j] = (*col)[l];
  }
  AffineInvolution iota{std::move(lin), Vec(m)};
  iota.validate();
  if (!iota.preserves(q)) throw Error(ErrorKind::IncompatibleInvolution, "restricted involution does not preserve the slice");
  return SliceResult{std::move(q), std::move(iota), std::move(basis), base};
}

}  // namespace invchar
