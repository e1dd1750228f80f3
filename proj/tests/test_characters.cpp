#include <gtest/gtest.h>

#include "invchar/characters.hpp"
#include "invchar/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace invchar;
using support::fixture;
using support::t_pow;

namespace {

SignedBettiTable load_table(const std::string& name) { return io::parse_betti_table(io::read_file(fixture(name))); }

SignedBettiTable symmetric_table(const HPolytope& p) {
  const auto q = p.translated(Rational(-1) * *detect_central_symmetry(p));
  const auto fan = normal_fan(q);
  return signed_betti(graded_trace(fan, FanAutomorphism::negation(fan)));
}

RationalFunction over_one_minus_t2(const Poly& num, unsigned k = 1) {
  return RationalFunction(num, Poly::binomial_term(-1, 2).pow(k));
}

std::vector<std::pair<std::int64_t, std::int64_t>> pairs(const SignedBettiTable& t) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& e : t.entries) out.emplace_back(e.plus, e.minus);
  return out;
}

}  // namespace

TEST(BtCharacter, RankOne) { EXPECT_EQ(bt_theta_character(TorusRank(1)).value, RationalFunction(Poly::one(), Poly{1, 0, 1})); }

TEST(BtCharacter, RankTwoExpansion) {
  EXPECT_EQ(series_expand(bt_theta_character(TorusRank(2)).value, 4), (Poly{1, 0, -2, 0, 3}));
}

TEST(BtCharacter, UnitAtZero) {
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(bt_theta_character(TorusRank(k)).value.at_zero(), 1);
  EXPECT_THROW(TorusRank(0), Error);
}

TEST(BtCharacter, MatchesMonomialCount) {
  for (int k = 1; k <= 4; ++k) {
    const Poly s = series_expand(bt_theta_character(TorusRank(k)).value, 16);
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(s[2 * d], (d % 2 ? -1 : 1) * oracle::choose(d + k - 1, k - 1));
  }
}

TEST(ChiFromManifold, ProjectiveSpace) {
  EXPECT_EQ(chi_from_manifold(load_table("cp3.betti"), TorusRank(1)).value, RationalFunction(Poly{1, 0, 0, 0, 1}));
}

TEST(ChiFromManifold, SymmetricToricIsOne) {
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(chi_from_manifold(symmetric_table(support::cube(n)), TorusRank(n)).value, RationalFunction::constant(1));
}

TEST(ChiFromManifold, Point) {
  EXPECT_EQ(chi_from_manifold(SignedBettiTable::point(), TorusRank(3)).value, bt_theta_character(TorusRank(3)).value);
}

TEST(ChiFromManifold, TimesDenominatorRecoversSignedPolynomial) {
  for (const char* name : {"cp3.betti", "cp1xcp1_swap.betti"})
    for (int k = 1; k <= 3; ++k) {
      const auto t = load_table(name);
      const auto chi = chi_from_manifold(t, TorusRank(k)).value;
      EXPECT_EQ(chi * RationalFunction(Poly::binomial_term(1, 2).pow(k)), RationalFunction(t.signed_poly()));
    }
}

TEST(ChiFromReduction, Examples) {
  EXPECT_EQ(chi_from_reduction(SignedBettiTable::point()).value, RationalFunction::constant(1));
  EXPECT_EQ(chi_from_reduction(load_table("cp1xcp1_swap.betti")).value, RationalFunction(Poly{1, 0, 0, 0, 1}));
  const auto trivial = io::parse_betti_table("0 1 0\n2 2 0\n4 1 0\n");
  EXPECT_EQ(chi_from_reduction(trivial).value, RationalFunction(Poly{1, 0, 2, 0, 1}));
}

TEST(MainIdentity, ProjectiveSpaceAgainstQuadric) {
  const auto r = verify_main_identity(load_table("cp3.betti"), load_table("cp1xcp1_swap.betti"), TorusRank(1));
  EXPECT_TRUE(r.holds());
  ASSERT_EQ(r.rows.size(), 7u);
  for (const auto& row : r.rows) EXPECT_EQ(row.lhs, row.degree % 2 == 0 ? 1 : 0);
}

TEST(MainIdentity, SymmetricToricAgainstPoint) {
  for (int n = 1; n <= 4; ++n)
    EXPECT_TRUE(verify_main_identity(symmetric_table(support::cube(n)), SignedBettiTable::point(), TorusRank(n)).holds());
}

TEST(MainIdentity, InjectedFaultIsLocated) {
  auto table0 = load_table("cp1xcp1_swap.betti");
  table0.entries[2].plus += 1;
  const auto r = verify_main_identity(load_table("cp3.betti"), table0, TorusRank(1));
  EXPECT_FALSE(r.holds());
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, 2);
  EXPECT_EQ(r.rows[2].lhs, 1);
  EXPECT_EQ(r.rows[2].rhs, 2);
}

TEST(MainIdentity, SymmetricUnderDegreeReversal) {
  const auto t = load_table("cp3.betti");
  const auto t0 = load_table("cp1xcp1_swap.betti");
  EXPECT_EQ(verify_main_identity(t, t0, TorusRank(1)).holds(), verify_main_identity(t.reversed(), t0.reversed(), TorusRank(1)).holds());
  auto bad = t0;
  bad.entries[0].plus = 2;
  EXPECT_FALSE(verify_main_identity(t, bad, TorusRank(1)).holds());
  EXPECT_FALSE(verify_main_identity(t.reversed(), bad.reversed(), TorusRank(1)).holds());
}

TEST(SolveReductionSignature, Examples) {
  EXPECT_EQ(solve_reduction_signature(io::parse_betti_table("0 1 0\n6 1 0\n"), TorusRank(1)), (Poly{1, 0, -1, 0, 1}));
  EXPECT_EQ(solve_reduction_signature(load_table("cp3.betti"), TorusRank(1)), (Poly{1, 0, 0, 0, 1}));
  try {
    solve_reduction_signature(io::parse_betti_table("0 1 0\n4 1 0\n"), TorusRank(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDivisible);
  }
}

TEST(StanleyCheck, Examples) {
  const auto cube3 = symmetric_table(support::cube(3));
  const auto r = stanley_check(cube3, 3);
  EXPECT_TRUE(r.holds());
  std::vector<std::int64_t> diffs;
  for (const auto& row : r.rows)
    if (row.degree % 2 == 0) diffs.push_back(row.difference);
  EXPECT_EQ(diffs, (std::vector<std::int64_t>{1, 3, 3, 1}));
  EXPECT_TRUE(stanley_check(symmetric_table(support::load_polytope("hexagon.poly")), 2).holds());
  EXPECT_EQ(symmetric_table(support::load_polytope("hexagon.poly")).at(2).plus, 3);
  EXPECT_TRUE(stanley_check(symmetric_table(support::cube(1)), 1).holds());
  EXPECT_FALSE(stanley_check(load_table("cp3.betti"), 3).holds());
}

TEST(EquivariantSplit, ProjectiveSpace) {
  const auto s = equivariant_split(load_table("cp3.betti"), TorusRank(1));
  EXPECT_EQ(s.plus, over_one_minus_t2(Poly{1, 0, 0, 0, 1}));
  EXPECT_EQ(s.minus, over_one_minus_t2(Poly{0, 0, 1, 0, 0, 0, 1}));
}

TEST(EquivariantSplit, Point) {
  const auto s = equivariant_split(SignedBettiTable::point(), TorusRank(1));
  EXPECT_EQ(s.plus, RationalFunction(Poly::one(), Poly::binomial_term(-1, 4)));
  EXPECT_EQ(s.minus, RationalFunction(t_pow(2), Poly::binomial_term(-1, 4)));
}

TEST(EquivariantSplit, ForgettingInvolutionGivesFormality) {
  for (const char* name : {"cp3.betti", "cp1xcp1_swap.betti"})
    for (int k = 1; k <= 3; ++k) {
      const auto t = load_table(name);
      const auto s = equivariant_split(t, TorusRank(k));
      EXPECT_EQ(s.plus + s.minus, over_one_minus_t2(t.betti_poly(), k));
      EXPECT_EQ(s.plus - s.minus, chi_from_manifold(t, TorusRank(k)).value);
    }
}

TEST(EquivariantSplit, MatchesDirectCount) {
  for (const char* name : {"cp3.betti", "cp1xcp1_swap.betti"})
    for (int k = 1; k <= 3; ++k) {
      const auto t = load_table(name);
      const auto s = equivariant_split(t, TorusRank(k));
      const auto [plus, minus] = oracle::equivariant_counts(pairs(t), k, 14);
      const Poly ps = series_expand(s.plus, 14), ms = series_expand(s.minus, 14);
      for (int d = 0; d <= 14; ++d) {
        EXPECT_EQ(ps[d], plus[d]);
        EXPECT_EQ(ms[d], minus[d]);
      }
    }
}

TEST(CharacterProperty, UnitAtZeroForConnectedFixtures) {
  for (int n = 1; n <= 4; ++n) {
    const auto t = symmetric_table(support::cube(n));
    for (int k = 1; k <= n; ++k) EXPECT_EQ(chi_from_manifold(t, TorusRank(k)).value.at_zero(), 1);
  }
  EXPECT_EQ(chi_from_manifold(load_table("cp3.betti"), TorusRank(1)).value.at_zero(), 1);
}
