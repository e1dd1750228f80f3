#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "invchar/io.hpp"
#include "invchar/polytope.hpp"
#include "invchar/rational_function.hpp"

namespace support {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(INVCHAR_FIXTURE_DIR) / name; }

inline invchar::HPolytope load_polytope(const std::string& name) {
  return invchar::io::parse_polytope(invchar::io::read_file(fixture(name)));
}

inline invchar::HPolytope cube(int n, int lo = -1, int hi = 1) {
  std::vector<invchar::Facet> f;
  for (int i = 0; i < n; ++i) {
    invchar::Vec a(n), b(n);
    a[i] = 1;
    b[i] = -1;
    f.push_back({a, hi});
    f.push_back({b, -lo});
  }
  return invchar::HPolytope::make(n, f);
}

inline invchar::Poly t_pow(std::size_t d) { return invchar::Poly::monomial(invchar::Rational(1), d); }

inline invchar::Poly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), c(-4, 4), q(1, 3);
  std::vector<invchar::Rational> coeffs(deg(rng) + 1);
  for (auto& x : coeffs) x = invchar::Rational(c(rng), q(rng));
  return invchar::Poly(std::move(coeffs));
}

inline invchar::Poly random_nonzero_poly(std::mt19937& rng, int max_degree) {
  for (;;) {
    auto p = random_poly(rng, max_degree);
    if (!p.is_zero()) return p;
  }
}

// Random rational function whose denominator does not vanish at 0.
inline invchar::RationalFunction random_ratfun(std::mt19937& rng) {
  auto den = random_nonzero_poly(rng, 3);
  if (den[0] == 0) den += invchar::Poly::one();
  return invchar::RationalFunction(random_poly(rng, 4), den);
}

}  // namespace support
