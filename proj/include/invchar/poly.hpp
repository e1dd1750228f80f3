#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "invchar/rational.hpp"

namespace invchar {

/// Univariate polynomial in t with rational coefficients, stored dense by
/// degree. The coefficient list never ends in a zero, so the zero
/// polynomial is the empty list and equality is structural.
class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  explicit Poly(const Rational& constant) {
    if (constant != 0) coeffs_.push_back(constant);
  }

  static Poly constant(const Rational& c) { return Poly(c); }
  static Poly one() { return Poly(Rational(1)); }
  static Poly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
  }
  /// 1 + s·t^degree, the building block of every series in this library.
  static Poly binomial_term(int s, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[0] += 1;
    v[degree] += s;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(unsigned e) const {
    Poly result = one();
    Poly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Keeps terms of degree <= order.
  Poly truncate(int order) const {
    if (order < 0) return {};
    if (degree() <= order) return *this;
    return Poly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  /// Coefficients of t^{degree - i}, i.e. t^deg · p(1/t) padded to `length` terms.
  Poly reversed(std::size_t length) const {
    std::vector<Rational> v(length);
    for (std::size_t i = 0; i < coeffs_.size() && i < length; ++i) v[length - 1 - i] = coeffs_[i];
    return Poly(std::move(v));
  }

  Poly monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

  /// Coefficient list in the "[c0,c1,...]" form used by reports.
  std::string to_list() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ",";
      s += coeffs_[i].str();
    }
    return s + "]";
  }

  /// Human form, e.g. "1 - t^2 + t^4".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (i == 0 || mag != 1) s += mag.str();
      if (i > 0) {
        s += "t";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of polynomial long division over Q.
inline std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {Poly{}, num};
  std::vector<Rational> quot(num.degree() - dd + 1);
  const Rational lead_inv = Rational(1) / den.leading();
  for (int i = num.degree(); i >= dd; --i) {
    if (rem[i] == 0) continue;
    Rational q = rem[i] * lead_inv;
    quot[i - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * den.coeffs()[j];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Returns q with num = q·den; throws NotDivisible when the remainder is nonzero.
inline Poly exact_divide(const Poly& num, const Poly& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero())
    throw Error(ErrorKind::NotDivisible,
                "(" + num.to_string() + ") / (" + den.to_string() + ") leaves remainder " + r.to_string());
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace invchar
