#include <gtest/gtest.h>

#include <numeric>

#include "invchar/flag.hpp"
#include "invchar/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace invchar;
using namespace invchar::flag;

TEST(CoinvariantDims, Examples) {
  EXPECT_EQ(coinvariant_dims(2), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(coinvariant_dims(3), (std::vector<std::int64_t>{1, 2, 2, 1}));
  EXPECT_EQ(coinvariant_dims(4), (std::vector<std::int64_t>{1, 3, 5, 6, 5, 3, 1}));
  EXPECT_THROW(coinvariant_dims(1), Error);
}

TEST(CoinvariantDims, PalindromicWithFactorialTotal) {
  std::int64_t factorial = 1;
  for (int n = 2; n <= 7; ++n) {
    factorial *= n;
    const auto d = coinvariant_dims(n);
    EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::int64_t{0}), factorial);
    EXPECT_TRUE(std::equal(d.begin(), d.end(), d.rbegin()));
  }
}

TEST(CoinvariantAlgebra, StaircaseBasisSizes) {
  for (int n = 2; n <= 5; ++n) {
    CoinvariantAlgebra alg(n);
    const auto dims = coinvariant_dims(n);
    for (int m = 0; m <= alg.top_degree(); ++m) EXPECT_EQ(static_cast<std::int64_t>(alg.basis(m).size()), dims[m]);
    EXPECT_TRUE(alg.basis(alg.top_degree() + 1).empty());
  }
}

TEST(CoinvariantAlgebra, ElementarySymmetricPolynomialsVanish) {
  for (int n = 2; n <= 5; ++n) {
    CoinvariantAlgebra alg(n);
    for (int j = 1; j <= n; ++j) {
      std::map<std::vector<int>, Rational> total;
      for_each_combination(static_cast<std::size_t>(n), static_cast<std::size_t>(j), [&](const std::vector<std::size_t>& idx) {
        std::vector<int> a(n, 0);
        for (auto i : idx) a[i] = 1;
        for (const auto& [m, c] : alg.normal_form(a)) total[m] += c;
        return true;
      });
      for (const auto& [m, c] : total) EXPECT_EQ(c, 0) << "e_" << j << " for n=" << n;
    }
  }
}

TEST(CoinvariantAlgebra, IdentityTraceIsDimension) {
  CoinvariantAlgebra alg(4);
  const auto tr = alg.trace(Substitution::identity(4));
  const auto dims = coinvariant_dims(4);
  for (std::size_t i = 0; i < dims.size(); ++i) EXPECT_EQ(tr.traces[i], Rational(dims[i]));
}

TEST(ThetaTrace, SmallCases) {
  EXPECT_EQ(theta_trace(2).trace_poly(), (Poly{1, 0, 1}));
  EXPECT_EQ(theta_trace(3).trace_poly(), Poly::binomial_term(1, 6));
}

TEST(ThetaTrace, FrozenValues) {
  EXPECT_EQ(theta_trace(4).trace_poly(), (Poly{1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(theta_trace(5).trace_poly(), (Poly{1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1}));
}

TEST(ThetaTrace, MatchesMolienOracle) {
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(RationalFunction(theta_trace(n).trace_poly()), oracle::molien_theta_trace(n)) << "n=" << n;
}

TEST(ThetaTrace, PalindromicWithUnitEnds) {
  for (int n = 2; n <= 5; ++n) {
    const auto tr = theta_trace(n);
    EXPECT_EQ(tr.traces.front(), 1);
    EXPECT_EQ(tr.traces.back(), 1);
    EXPECT_TRUE(std::equal(tr.traces.begin(), tr.traces.end(), tr.traces.rbegin()));
  }
}

TEST(PredictReductionSignature, Examples) {
  EXPECT_EQ(predict_reduction_signature(2), Poly::one());
  EXPECT_EQ(predict_reduction_signature(3), (Poly{1, 0, -1, 0, 1}));
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(predict_reduction_signature(n)[0], 1);
}

TEST(FlagSpec, Validation) {
  EXPECT_TRUE(check_moment_compat(FlagSpec::standard(3)));
  FlagSpec dup = FlagSpec::standard(3);
  dup.weights = {1, 1, 2};
  EXPECT_THROW(dup.validate(), Error);
  FlagSpec asym = FlagSpec::standard(3);
  asym.spectrum = {-1, 0, 2};
  EXPECT_THROW(asym.validate(), Error);
  EXPECT_THROW(FlagSpec::standard(1).validate(), Error);
}

TEST(FlagSpec, FixturesPassCompatibility) {
  for (int n = 2; n <= 4; ++n) {
    const auto spec = io::parse_flag_spec(io::read_file(support::fixture("flag" + std::to_string(n) + ".spec")));
    EXPECT_EQ(spec.n, n);
    EXPECT_TRUE(check_moment_compat(spec));
  }
}
