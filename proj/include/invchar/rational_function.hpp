#pragma once

#include <string>
#include <utility>

#include "invchar/poly.hpp"

namespace invchar {

/// num/den over Q in canonical form: coprime, den monic. Two rational
/// functions are equal iff their canonical forms are identical.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Poly::one()) {}
  RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::one()) {}  // NOLINT: implicit by design of the algebra
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction constant(const Rational& c) { return RationalFunction(Poly(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Value at t = 0; requires a nonzero constant term in the denominator.
  Rational at_zero() const {
    if (den_[0] == 0) throw Error(ErrorKind::PoleAtZero, "rational function has a pole at t = 0");
    return num_[0] / den_[0];
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_}; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction pow(int e) const {
    if (e >= 0) return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e))};
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    return {den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e))};
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    // printed with a positive constant term below the line when there is one
    if (den_[0] < 0) return "(" + (-num_).to_string() + ")/(" + (-den_).to_string() + ")";
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::one();
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
      num_ *= Rational(1) / lead;
      den_ *= Rational(1) / lead;
    }
  }

  Poly num_;
  Poly den_;
};

/// Taylor coefficients of f at t = 0 up to and including t^order.
inline Poly series_expand(const RationalFunction& f, int order) {
  const Poly& den = f.den();
  if (den[0] == 0) throw Error(ErrorKind::PoleAtZero, "series expansion needs a nonzero constant term in " + den.to_string());
  if (order < 0) return {};
  std::vector<Rational> out(order + 1);
  const Rational inv0 = Rational(1) / den[0];
  for (int i = 0; i <= order; ++i) {
    Rational acc = f.num()[i];
    const int top = std::min(i, den.degree());
    for (int j = 1; j <= top; ++j) acc -= den.coeffs()[j] * out[i - j];
    out[i] = acc * inv0;
  }
  return Poly(std::move(out));
}

/// 1 + s·t^degree as a rational function; the common factors (1±t²)^k.
inline RationalFunction one_plus(int s, std::size_t degree) { return RationalFunction(Poly::binomial_term(s, degree)); }

}  // namespace invchar
