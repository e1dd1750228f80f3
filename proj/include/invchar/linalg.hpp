#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "invchar/rational.hpp"

namespace invchar {

using Vec = std::vector<Rational>;
/// Row-major dense matrix.
using Matrix = std::vector<Vec>;

namespace linalg {

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Vec operator*(const Rational& c, Vec a) {
  for (auto& x : a) x *= c;
  return a;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  Matrix c(a.size(), Vec(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Vec apply(const Matrix& a, const Vec& x) {
  Vec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

inline Matrix scale(const Rational& c, Matrix a) {
  for (auto& row : a)
    for (auto& x : row) x *= c;
  return a;
}

inline bool is_integral(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!is_integer(x)) return false;
  return true;
}

/// Reduced row echelon form, pivots chosen left to right.
struct Echelon {
  Matrix rows;               // nonzero rows only, each with a leading 1
  std::vector<std::size_t> pivots;  // pivot column of each row

  std::size_t rank() const { return rows.size(); }

  /// Subtracts row-space components so every pivot column of v is zero.
  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (rows[r][j] != 0) v[j] -= c * rows[r][j];
    }
    return v;
  }
};

/// Pivots are searched in the first `cols` columns; row operations act on
/// whole rows, so trailing columns carry along as an augmentation.
inline Echelon rref(Matrix a, std::size_t cols) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const Rational inv = Rational(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < a[r].size(); ++j)
        if (a[row][j] != 0) a[r][j] -= f * a[row][j];
    }
    e.pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  e.rows = std::move(a);
  return e;
}

inline Echelon rref(const Matrix& a) { return rref(a, a.empty() ? 0 : a[0].size()); }

inline std::size_t rank(const Matrix& a) { return a.empty() ? 0 : rref(a).rank(); }

/// Rank of the affine hull of a point set (0 for a single point, -1 if empty).
inline int affine_rank(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

/// Unique solution of A x = b, or nullopt if inconsistent or underdetermined.
inline std::optional<Vec> solve_unique(const Matrix& a, const Vec& b) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(aug, n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  if (e.rank() != n) return std::nullopt;
  Vec x(n);
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.rows[r][n];
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug, n);
  if (e.rank() != n) return std::nullopt;
  Matrix inv(n, Vec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) inv[e.pivots[r]][j] = e.rows[r][n + j];
  return inv;
}

/// Integer vector on the same ray as v with coprime entries.
inline Vec primitive(const Vec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, denom(x));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& x : v) {
    ints.push_back(numer(x) * (l / denom(x)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  Vec out;
  for (auto& z : ints) out.emplace_back(g == 0 ? BigInt(0) : BigInt(z / g));
  return out;
}

/// Lattice basis of ker(A) ∩ Z^n, returned as rows. Column operations on A
/// are unimodular, so the trailing columns of the accumulated transform span
/// exactly the integer kernel. Each basis vector's first nonzero entry is
/// made positive.
inline Matrix integer_kernel_basis(const Matrix& a, std::size_t n) {
  std::vector<std::vector<BigInt>> m;
  for (const auto& row : a) {
    Vec p = row;
    BigInt l = 1;
    for (const auto& x : p) l = boost::multiprecision::lcm(l, denom(x));
    std::vector<BigInt> r;
    for (const auto& x : p) r.push_back(numer(x) * (l / denom(x)));
    m.push_back(std::move(r));
  }
  std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q * col src
    for (auto& r : m) r[dst] -= q * r[src];
    for (auto& r : u) r[dst] -= q * r[src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& r : m) std::swap(r[x], r[y]);
    for (auto& r : u) std::swap(r[x], r[y]);
  };
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < m.size() && pivot < n; ++r) {
    for (;;) {
      // smallest nonzero |entry| among columns >= pivot goes to pivot
      std::size_t best = n;
      for (std::size_t j = pivot; j < n; ++j)
        if (m[r][j] != 0 && (best == n || abs(m[r][j]) < abs(m[r][best]))) best = j;
      if (best == n) break;
      if (best != pivot) col_swap(best, pivot);
      bool done = true;
      for (std::size_t j = pivot + 1; j < n; ++j) {
        if (m[r][j] == 0) continue;
        col_axpy(j, pivot, m[r][j] / m[r][pivot]);
        if (m[r][j] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  Matrix basis;
  for (std::size_t j = pivot; j < n; ++j) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Rational(u[i][j]);
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (first != v.end() && *first < 0)
      for (auto& x : v) x = -x;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace linalg

// Vec is a std::vector, so argument-dependent lookup cannot find these.
using linalg::operator+;
using linalg::operator-;
using linalg::operator*;

}  // namespace invchar
