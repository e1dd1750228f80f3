#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invchar/rational_function.hpp"
#include "invchar/toric_trace.hpp"

namespace invchar {

/// Rank k >= 1 of the acting torus.
class TorusRank {
 public:
  explicit TorusRank(int k) : k_(k) {
    if (k < 1) throw Error(ErrorKind::InvalidInput, "torus rank must be positive, got " + std::to_string(k));
  }
  int value() const { return k_; }

 private:
  int k_;
};

/// Graded trace of the involution on an equivariant cohomology ring, as an
/// exact rational function of t.
struct Character {
  RationalFunction value;

  friend bool operator==(const Character&, const Character&) = default;
  std::string to_string() const { return value.to_string(); }
};

/// Character of the involution on H^*(BT) = C[t_1..t_k] with t_i -> -t_i in
/// degree 2: sum_d (-1)^d C(d+k-1, k-1) t^{2d} = 1/(1+t^2)^k.
inline Character bt_theta_character(TorusRank k) {
  return Character{RationalFunction(Poly::one(), Poly::binomial_term(1, 2).pow(k.value()))};
}

/// sum_i (h^{i,+} - h^{i,-}) t^i / (1+t^2)^k, summing from i = 0.
inline Character chi_from_manifold(const SignedBettiTable& table, TorusRank k) {
  return Character{RationalFunction(table.signed_poly()) * bt_theta_character(k).value};
}

/// sum_i (h0^{i,+} - h0^{i,-}) t^i
inline Character chi_from_reduction(const SignedBettiTable& reduced) {
  return Character{RationalFunction(reduced.signed_poly())};
}

struct MainIdentityReport {
  struct Row {
    int degree = 0;
    Rational lhs;  // h^{i,+} - h^{i,-}
    Rational rhs;  // sum_j C(k,j) (h0^{i-2j,+} - h0^{i-2j,-})
    bool ok = true;
  };
  std::vector<Row> rows;
  std::optional<int> first_failure;
  Character manifold_side;
  Character reduction_side;

  bool holds() const { return !first_failure && manifold_side == reduction_side; }
};

/// Coefficientwise comparison of the signed Betti numbers of M with the
/// binomial convolution of those of its reduction M0, over i = 0..2n.
inline MainIdentityReport verify_main_identity(const SignedBettiTable& table, const SignedBettiTable& reduced, TorusRank k) {
  MainIdentityReport r;
  const int top = std::max(table.top_degree(), reduced.top_degree() + 2 * k.value());
  for (int i = 0; i <= top; ++i) {
    MainIdentityReport::Row row;
    row.degree = i;
    const auto e = table.at(i);
    row.lhs = Rational(e.plus - e.minus);
    for (int j = 0; j <= std::min(k.value(), i / 2); ++j) {
      const auto e0 = reduced.at(i - 2 * j);
      row.rhs += binomial(k.value(), j) * Rational(e0.plus - e0.minus);
    }
    row.ok = row.lhs == row.rhs;
    if (!row.ok && !r.first_failure) r.first_failure = i;
    r.rows.push_back(std::move(row));
  }
  r.manifold_side = chi_from_manifold(table, k);
  r.reduction_side = chi_from_reduction(reduced);
  return r;
}

/// Signed-difference polynomial of the reduction predicted from M alone:
/// sum_i (h^{i,+} - h^{i,-}) t^i divided exactly by (1+t^2)^k.
inline Poly solve_reduction_signature(const SignedBettiTable& table, TorusRank k) {
  return exact_divide(table.signed_poly(), Poly::binomial_term(1, 2).pow(k.value()));
}

struct StanleyReport {
  struct Row {
    int degree = 0;
    std::int64_t difference = 0;
    Rational expected;
    bool ok = true;
  };
  std::vector<Row> rows;
  std::optional<int> first_failure;

  bool holds() const { return !first_failure; }
};

/// h^{2i,+} - h^{2i,-} = C(n,i) and odd degrees vanish.
inline StanleyReport stanley_check(const SignedBettiTable& table, int n) {
  StanleyReport r;
  for (int deg = 0; deg <= std::max(2 * n, table.top_degree()); ++deg) {
    const auto e = table.at(deg);
    StanleyReport::Row row;
    row.degree = deg;
    row.difference = e.plus - e.minus;
    row.expected = deg % 2 == 0 ? binomial(n, deg / 2) : Rational(0);
    const bool odd_clean = deg % 2 == 0 || (e.plus == 0 && e.minus == 0);
    row.ok = Rational(row.difference) == row.expected && odd_clean;
    if (!row.ok && !r.first_failure) r.first_failure = deg;
    r.rows.push_back(row);
  }
  return r;
}

/// Graded dimensions of H_T^*(M)^± from H^*(M) ⊗ H^*(BT): with
/// B^± the even/odd-polynomial-degree parts of H^*(BT),
/// plus = P+ B+ + P- B-, minus = P+ B- + P- B+.
struct EquivariantSplit {
  RationalFunction plus;
  RationalFunction minus;
};

inline EquivariantSplit equivariant_split(const SignedBettiTable& table, TorusRank k) {
  const RationalFunction all(Poly::one(), Poly::binomial_term(-1, 2).pow(k.value()));  // 1/(1-t^2)^k
  const RationalFunction alt = bt_theta_character(k).value;                             // 1/(1+t^2)^k
  const RationalFunction half = RationalFunction::constant(Rational(1, 2));
  const RationalFunction b_even = half * (all + alt);
  const RationalFunction b_odd = half * (all - alt);
  const RationalFunction p_plus(table.plus_poly());
  const RationalFunction p_minus(table.minus_poly());
  return {p_plus * b_even + p_minus * b_odd, p_plus * b_odd + p_minus * b_even};
}

}  // namespace invchar
