#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invchar/characters.hpp"
#include "invchar/polytope.hpp"

namespace invchar {

enum class CoefficientSystem { Trivial, Sign, Regular };

inline std::string_view to_string(CoefficientSystem rho) {
  switch (rho) {
    case CoefficientSystem::Trivial: return "trivial";
    case CoefficientSystem::Sign: return "sign";
    case CoefficientSystem::Regular: return "regular";
  }
  return "?";
}

/// Dimension of the Z/2-representation underlying the coefficient system.
inline int rank_of(CoefficientSystem rho) { return rho == CoefficientSystem::Regular ? 2 : 1; }

/// A connected component Z != Z0 of Crit(|mu|^2). The involution moves it to
/// a different component, so its stabilizer in Z/2 ⋉ T is T (index 2).
struct CriticalComponentRecord {
  std::string id;
  int index = 0;       // Morse-Bott index, real dimension of the negative normal bundle
  int stab_rank = 0;   // rank of the generic stabilizer of T on Z
  RationalFunction t_series;  // T-equivariant Poincaré series of Z
  std::optional<std::string> paired_with;  // nullopt: claims to be fixed by the involution
};

/// Z0 = mu^{-1}(0); its equivariant cohomology is H^*(M0).
struct ZeroLevelRecord {
  SignedBettiTable table;
};

struct CriticalData {
  ZeroLevelRecord zero;
  std::vector<CriticalComponentRecord> components;
};

/// Every component must be paired with another existing component, and the
/// pairing must be an involution. Indices must be even and non-negative.
inline void validate_pairing(const CriticalData& data) {
  std::map<std::string, const CriticalComponentRecord*> by_id;
  for (const auto& c : data.components) {
    if (c.index < 0 || c.index % 2 != 0)
      throw Error(ErrorKind::InvalidInput, "component " + c.id + " has index " + std::to_string(c.index) + "; indices must be even");
    if (!by_id.emplace(c.id, &c).second) throw Error(ErrorKind::InvalidInput, "duplicate component id " + c.id);
  }
  for (const auto& c : data.components) {
    if (!c.paired_with) throw Error(ErrorKind::UnpairedComponent, "component " + c.id + " is not paired");
    if (*c.paired_with == c.id) throw Error(ErrorKind::UnpairedComponent, "component " + c.id + " is paired with itself");
    auto it = by_id.find(*c.paired_with);
    if (it == by_id.end()) throw Error(ErrorKind::UnpairedComponent, "component " + c.id + " is paired with missing " + *c.paired_with);
    if (it->second->paired_with != c.id)
      throw Error(ErrorKind::UnpairedComponent, "pairing of " + c.id + " and " + *c.paired_with + " is not symmetric");
  }
}

/// Critical data of |mu|^2 on the toric variety of a simple polytope
/// symmetric about 0, for the full torus. A face F is critical iff the
/// orthogonal projection b_F of 0 onto aff(F) lies in relint(F); its orbit
/// has stabilizer rank n - dim F and index 2·#{transverse edges e : <b_F,e> < 0}.
inline CriticalData full_torus_critical_data(const HPolytope& p) {
  if (!is_simple(p)) throw Error(ErrorKind::NotSimple, "Morse data needs a simple polytope");
  auto center = detect_central_symmetry(p);
  const std::size_t n = p.dim();
  if (!center || !linalg::is_zero(*center)) throw Error(ErrorKind::NotCentrallySymmetric, "polytope is not symmetric about 0");

  const auto& lattice = p.face_lattice();
  const auto& verts = p.vertices();
  const auto edges = lattice.of_dim(1);
  auto face_id = [](const Face& f) {
    std::string s = "F" + std::to_string(f.dim) + ":";
    for (std::size_t i = 0; i < f.vertices.size(); ++i) s += (i ? "," : "") + std::to_string(f.vertices[i]);
    return s;
  };
  std::map<std::vector<std::size_t>, std::size_t> index_of;
  for (std::size_t i = 0; i < lattice.faces.size(); ++i) index_of[lattice.faces[i].vertices] = i;

  CriticalData data;
  data.zero.table = SignedBettiTable::point();
  for (const auto& face : lattice.faces) {
    if (face.dim == static_cast<int>(n)) continue;  // the zero level
    const Vec& v0 = verts[face.vertices[0]].point;
    Matrix diffs;
    for (std::size_t i = 1; i < face.vertices.size(); ++i) diffs.push_back(linalg::operator-(verts[face.vertices[i]].point, v0));
    Vec b = v0;
    if (!diffs.empty()) {
      Matrix basis = linalg::rref(diffs, n).rows;
      Matrix gram = linalg::mul(basis, linalg::transpose(basis));
      Vec rhs = linalg::apply(basis, v0);
      for (auto& x : rhs) x = -x;
      auto coeff = linalg::solve_unique(gram, rhs);
      for (std::size_t r = 0; r < basis.size(); ++r) b = linalg::operator+(b, (*coeff)[r] * basis[r]);
    }
    bool interior = true;
    for (std::size_t i = 0; i < p.facets().size() && interior; ++i) {
      if (std::binary_search(face.facets.begin(), face.facets.end(), i)) continue;
      if (linalg::dot(p.facets()[i].normal, b) >= p.facets()[i].offset) interior = false;
    }
    if (!interior) continue;

    const std::size_t w = face.vertices[0];
    int negative = 0;
    std::size_t transverse = 0;
    for (auto e : edges) {
      const auto& ev = lattice.faces[e].vertices;
      if (!std::binary_search(ev.begin(), ev.end(), w)) continue;
      const std::size_t other = ev[0] == w ? ev[1] : ev[0];
      if (std::binary_search(face.vertices.begin(), face.vertices.end(), other)) continue;
      ++transverse;
      const Rational slope = linalg::dot(b, linalg::operator-(verts[other].point, verts[w].point));
      if (slope == 0) throw Error(ErrorKind::Degenerate, "critical orbit over face " + face_id(face) + " is degenerate");
      if (slope < 0) ++negative;
    }
    if (transverse != n - face.dim) throw Error(ErrorKind::NotSimple, "face " + face_id(face) + " has the wrong number of transverse edges");

    std::vector<std::size_t> opposite;
    for (auto v : face.vertices) opposite.push_back(*p.find_vertex(Rational(-1) * verts[v].point));
    std::sort(opposite.begin(), opposite.end());
    const Face& mirror = lattice.faces[index_of.at(opposite)];
    if (mirror.vertices == face.vertices)
      throw Error(ErrorKind::UnpairedComponent, "critical face " + face_id(face) + " is fixed by the involution");

    const int stab = static_cast<int>(n) - face.dim;
    data.components.push_back(CriticalComponentRecord{
        face_id(face), 2 * negative, stab,
        RationalFunction(Poly::one(), Poly::binomial_term(-1, 2).pow(static_cast<unsigned>(stab))), face_id(mirror)});
  }
  validate_pairing(data);
  return data;
}

/// Equivariant Morse counting series for Z/2 ⋉ T with coefficients rho:
/// zero-level term plus (1/2)·dim(V_rho)·t^{ind Z}·P_T(Z) for each Z != Z0.
inline RationalFunction counting_series(const CriticalData& data, CoefficientSystem rho) {
  validate_pairing(data);
  const auto& t0 = data.zero.table;
  Poly zero_term;
  switch (rho) {
    case CoefficientSystem::Trivial: zero_term = t0.plus_poly(); break;
    case CoefficientSystem::Sign: zero_term = t0.minus_poly(); break;
    case CoefficientSystem::Regular: zero_term = t0.betti_poly(); break;
  }
  RationalFunction sum(zero_term);
  const RationalFunction weight = RationalFunction::constant(Rational(rank_of(rho), 2));
  for (const auto& c : data.components)
    sum += weight * RationalFunction(Poly::monomial(Rational(1), static_cast<std::size_t>(c.index))) * c.t_series;
  return sum;
}

enum class ResidueKind {
  Zero,     // perfect
  BottForm, // (1+t)·Q(t), Q with non-negative integer coefficients up to the checked order
  NonBott,  // not of that form: the input data cannot come from a Morse-Bott function
};

inline std::string_view to_string(ResidueKind k) {
  switch (k) {
    case ResidueKind::Zero: return "zero";
    case ResidueKind::BottForm: return "(1+t)Q";
    case ResidueKind::NonBott: return "non-Bott";
  }
  return "?";
}

struct PerfectionEntry {
  CoefficientSystem rho = CoefficientSystem::Trivial;
  RationalFunction counting;
  RationalFunction expected;
  RationalFunction residue;  // counting - expected
  ResidueKind residue_kind = ResidueKind::Zero;
  bool series_agree = true;  // closed-form equality is reflected by the truncated expansions

  bool perfect() const { return residue.is_zero(); }
};

struct PerfectionReport {
  std::vector<PerfectionEntry> entries;  // trivial, sign, regular
  Character from_morse;     // counting(trivial) - counting(sign)
  Character from_manifold;  // chi computed from H^*(M)
  bool additive = true;     // counting(regular) == counting(trivial) + counting(sign)

  bool perfect() const {
    return std::all_of(entries.begin(), entries.end(), [](const PerfectionEntry& e) { return e.perfect(); });
  }
  bool consistent() const {
    return additive && std::all_of(entries.begin(), entries.end(), [](const PerfectionEntry& e) { return e.series_agree; });
  }
};

inline ResidueKind classify_residue(const RationalFunction& residue, int order) {
  if (residue.is_zero()) return ResidueKind::Zero;
  const RationalFunction q = residue / one_plus(1, 1);
  if (q.den()[0] == 0) return ResidueKind::NonBott;
  const Poly coeffs = series_expand(q, order);
  for (int i = 0; i <= order; ++i)
    if (coeffs[i] < 0 || !is_integer(coeffs[i])) return ResidueKind::NonBott;
  return ResidueKind::BottForm;
}

/// Compares the counting series with the equivariant Poincaré series of M
/// for each coefficient system. `expand_order` bounds the series checks.
inline PerfectionReport perfection_check(const CriticalData& data, const SignedBettiTable& table, TorusRank k, int expand_order) {
  const EquivariantSplit split = equivariant_split(table, k);
  PerfectionReport report;
  for (auto rho : {CoefficientSystem::Trivial, CoefficientSystem::Sign, CoefficientSystem::Regular}) {
    PerfectionEntry e;
    e.rho = rho;
    e.counting = counting_series(data, rho);
    e.expected = rho == CoefficientSystem::Trivial ? split.plus
                 : rho == CoefficientSystem::Sign  ? split.minus
                                                   : split.plus + split.minus;
    e.residue = e.counting - e.expected;
    e.residue_kind = classify_residue(e.residue, expand_order);
    const bool closed_equal = e.counting == e.expected;
    const bool series_equal = series_expand(e.counting, expand_order) == series_expand(e.expected, expand_order);
    e.series_agree = !closed_equal || series_equal;
    report.entries.push_back(std::move(e));
  }
  report.from_morse = Character{report.entries[0].counting - report.entries[1].counting};
  report.from_manifold = chi_from_manifold(table, k);
  report.additive = report.entries[2].counting == report.entries[0].counting + report.entries[1].counting;
  return report;
}

}  // namespace invchar
