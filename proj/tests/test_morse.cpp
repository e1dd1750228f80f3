#include <gtest/gtest.h>

#include "invchar/io.hpp"
#include "invchar/morse.hpp"
#include "support.hpp"

using namespace invchar;
using support::cube;
using support::fixture;
using support::t_pow;

namespace {

RationalFunction orbit_series(unsigned r) { return RationalFunction(Poly::one(), Poly::binomial_term(-1, 2).pow(r)); }

SignedBettiTable symmetric_table(const HPolytope& p) {
  const auto fan = normal_fan(p);
  return signed_betti(graded_trace(fan, FanAutomorphism::negation(fan)));
}

CriticalData load_crit(const std::string& name) {
  return io::parse_critical_data(io::read_file(fixture(name)), fixture(name).parent_path());
}

SignedBettiTable load_table(const std::string& name) { return io::parse_betti_table(io::read_file(fixture(name))); }

std::map<std::pair<int, int>, int> census(const CriticalData& d) {
  std::map<std::pair<int, int>, int> out;  // (stab rank, index) -> count
  for (const auto& c : d.components) ++out[{c.stab_rank, c.index}];
  return out;
}

}  // namespace

TEST(FullTorusCriticalData, Square) {
  const auto d = full_torus_critical_data(cube(2));
  EXPECT_EQ(census(d), (std::map<std::pair<int, int>, int>{{{1, 2}, 4}, {{2, 4}, 4}}));
  for (const auto& c : d.components) {
    EXPECT_EQ(c.t_series, orbit_series(static_cast<unsigned>(c.stab_rank)));
    ASSERT_TRUE(c.paired_with);
    EXPECT_NE(*c.paired_with, c.id);
  }
  EXPECT_EQ(d.zero.table, SignedBettiTable::point());
}

TEST(FullTorusCriticalData, Interval) {
  const auto d = full_torus_critical_data(cube(1));
  EXPECT_EQ(census(d), (std::map<std::pair<int, int>, int>{{{1, 2}, 2}}));
}

TEST(FullTorusCriticalData, Cube) {
  const auto d = full_torus_critical_data(cube(3));
  EXPECT_EQ(census(d), (std::map<std::pair<int, int>, int>{{{1, 2}, 6}, {{2, 4}, 12}, {{3, 6}, 8}}));
}

TEST(FullTorusCriticalData, HexagonIsDegenerate) {
  // 0 projects onto the edge y1 = 1 at its endpoint (1,0), so that vertex is a
  // critical point with a flat transverse direction.
  for (const char* name : {"hexagon.poly", "hexprism.poly"}) {
    try {
      full_torus_critical_data(support::load_polytope(name));
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
    }
  }
}

TEST(FullTorusCriticalData, Preconditions) {
  auto kind = [](const HPolytope& p) {
    try {
      full_torus_critical_data(p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  EXPECT_EQ(kind(support::load_polytope("simplex3.poly")), ErrorKind::NotCentrallySymmetric);
  EXPECT_EQ(kind(cube(2, 0, 2)), ErrorKind::NotCentrallySymmetric);
  EXPECT_EQ(kind(support::load_polytope("octahedron.poly")), ErrorKind::NotSimple);
}

TEST(CountingSeries, SquareRegular) {
  const auto d = full_torus_critical_data(cube(2));
  EXPECT_EQ(counting_series(d, CoefficientSystem::Regular), RationalFunction(Poly{1, 0, 2, 0, 1}, Poly::binomial_term(-1, 2).pow(2)));
}

TEST(CountingSeries, ProjectiveSpaceFixture) {
  const auto d = load_crit("cp3.crit");
  EXPECT_EQ(counting_series(d, CoefficientSystem::Trivial), RationalFunction(Poly{1, 0, 0, 0, 1}, Poly{1, 0, -1}));
  EXPECT_EQ(counting_series(d, CoefficientSystem::Sign), RationalFunction(Poly{0, 0, 1, 0, 0, 0, 1}, Poly{1, 0, -1}));
}

TEST(CountingSeries, RejectsUnpairedComponents) {
  try {
    counting_series(load_crit("cp3_unpaired.crit"), CoefficientSystem::Trivial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnpairedComponent);
  }
  CriticalData odd = load_crit("cp3.crit");
  odd.components[0].index = 3;
  EXPECT_THROW(counting_series(odd, CoefficientSystem::Trivial), Error);
  CriticalData self = load_crit("cp3.crit");
  self.components[0].paired_with = self.components[0].id;
  EXPECT_THROW(counting_series(self, CoefficientSystem::Trivial), Error);
}

TEST(PerfectionCheck, CubeIsPerfect) {
  const auto p = cube(3);
  const auto r = perfection_check(full_torus_critical_data(p), symmetric_table(p), TorusRank(3), 16);
  EXPECT_TRUE(r.perfect());
  EXPECT_TRUE(r.consistent());
  for (const auto& e : r.entries) EXPECT_EQ(e.residue_kind, ResidueKind::Zero);
  EXPECT_EQ(r.from_morse, r.from_manifold);
  EXPECT_EQ(r.from_morse.value, RationalFunction::constant(1));
}

TEST(PerfectionCheck, ProjectiveSpaceFixture) {
  const auto r = perfection_check(load_crit("cp3.crit"), load_table("cp3.betti"), TorusRank(1), 16);
  EXPECT_TRUE(r.perfect());
  EXPECT_EQ(r.entries[0].counting, RationalFunction(Poly{1, 0, 0, 0, 1}, Poly{1, 0, -1}));
  EXPECT_EQ(r.entries[1].counting, RationalFunction(Poly{0, 0, 1, 0, 0, 0, 1}, Poly{1, 0, -1}));
  EXPECT_EQ(r.from_morse.value, RationalFunction(Poly{1, 0, 0, 0, 1}));
}

TEST(PerfectionCheck, CorruptedIndexIsDetected) {
  const auto r = perfection_check(load_crit("cp3_corrupt.crit"), load_table("cp3.betti"), TorusRank(1), 16);
  EXPECT_FALSE(r.perfect());
  EXPECT_NE(r.entries[0].residue_kind, ResidueKind::Zero);
}

TEST(ClassifyResidue, Forms) {
  EXPECT_EQ(classify_residue(RationalFunction{}, 10), ResidueKind::Zero);
  // (1+t) t^2 / (1-t^2) = t^2/(1-t): Bott form
  EXPECT_EQ(classify_residue(RationalFunction(Poly{0, 0, 1, 1}, Poly{1, 0, -1}), 10), ResidueKind::BottForm);
  EXPECT_EQ(classify_residue(RationalFunction(Poly{0, 0, 1}), 10), ResidueKind::NonBott);
  EXPECT_EQ(classify_residue(RationalFunction(Poly{0, -1, -1}), 10), ResidueKind::NonBott);
}

TEST(MorseProperty, AdditiveInCoefficients) {
  std::vector<CriticalData> all{load_crit("cp3.crit"), load_crit("cp3_corrupt.crit")};
  for (int n = 1; n <= 3; ++n) all.push_back(full_torus_critical_data(cube(n)));
  for (const auto& d : all)
    EXPECT_EQ(counting_series(d, CoefficientSystem::Regular),
              counting_series(d, CoefficientSystem::Trivial) + counting_series(d, CoefficientSystem::Sign));
}

TEST(MorseProperty, RegularCountEqualsPoincareSeries) {
  for (const char* name : {"cube1.poly", "cube2.poly", "cube3.poly", "cube4.poly"}) {
    const auto p = support::load_polytope(name);
    const auto n = static_cast<unsigned>(p.dim());
    Poly h;
    const auto hv = h_vector(p);
    for (std::size_t i = 0; i < hv.size(); ++i) h += Poly::monomial(Rational(hv[i]), 2 * i);
    EXPECT_EQ(counting_series(full_torus_critical_data(p), CoefficientSystem::Regular), RationalFunction(h, Poly::binomial_term(-1, 2).pow(n)))
        << name;
  }
}

TEST(MorseProperty, SeriesAgreeWithClosedForms) {
  for (const char* name : {"cube1.poly", "cube2.poly", "cube3.poly"}) {
    const auto p = support::load_polytope(name);
    const int order = 2 * 2 * static_cast<int>(p.dim()) + 10;
    const auto r = perfection_check(full_torus_critical_data(p), symmetric_table(p), TorusRank(static_cast<int>(p.dim())), order);
    for (const auto& e : r.entries) {
      EXPECT_TRUE(e.series_agree);
      EXPECT_EQ(series_expand(e.counting, order), series_expand(e.expected, order));
    }
  }
}
