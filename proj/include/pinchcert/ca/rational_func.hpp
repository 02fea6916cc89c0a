#pragma once

#include <map>

#include "pinchcert/ca/poly.hpp"

namespace pinchcert::ca {

// Quotient num/den of polynomials over Q. Every value produced by the public
// constructors or arithmetic is in normal form: gcd(num, den) = 1 and den is
// monic under grlex (so its leading coefficient is positive).
class RationalFunc {
 public:
  RationalFunc() : den_(Rational(1)) {}
  RationalFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
  RationalFunc(long c) : RationalFunc(Rational(c)) {}              // NOLINT
  RationalFunc(const Poly& p) : num_(p), den_(Rational(1)) {}      // NOLINT
  /// Normalizing constructor; throws ZeroDenominator when den is zero.
  RationalFunc(const Poly& num, const Poly& den);

  /// Stores num/den as given (only den != 0 is checked).
  static RationalFunc unnormalized(Poly num, Poly den);

  static RationalFunc variable(Var v) { return RationalFunc(Poly::variable(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_normalized() const;
  /// True when the value is a constant (no variables in num or den).
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function; throws std::logic_error otherwise.
  Rational constant_value() const;
  bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }

  RationalFunc operator-() const;
  RationalFunc& operator+=(const RationalFunc& g) { return *this = *this + g; }
  RationalFunc& operator-=(const RationalFunc& g) { return *this = *this - g; }
  RationalFunc& operator*=(const RationalFunc& g) { return *this = *this * g; }
  RationalFunc& operator/=(const RationalFunc& g) { return *this = *this / g; }

  friend RationalFunc operator+(const RationalFunc& f, const RationalFunc& g);
  friend RationalFunc operator-(const RationalFunc& f, const RationalFunc& g);
  friend RationalFunc operator*(const RationalFunc& f, const RationalFunc& g);
  friend RationalFunc operator/(const RationalFunc& f, const RationalFunc& g);

  /// Structural equality; for normalized operands this is equality of functions.
  friend bool operator==(const RationalFunc& f, const RationalFunc& g) {
    return f.num_ == g.num_ && f.den_ == g.den_;
  }

  RationalFunc pow(int e) const;

 private:
  Poly num_;
  Poly den_;
};

using Bindings = std::map<Var, RationalFunc>;

/// Reduces f to normal form. Throws ZeroDenominator when f.den() is zero.
RationalFunc normalize(const RationalFunc& f);

/// Equality as functions, by cross multiplication (no normalization needed).
bool equivalent(const RationalFunc& f, const RationalFunc& g);

/// Simultaneous substitution of the bound variables.
RationalFunc substitute(const RationalFunc& f, const Bindings& bindings);
RationalFunc substitute(const RationalFunc& f, const std::map<Var, Rational>& point);

/// Exact partial derivative (quotient rule), normalized.
RationalFunc derivative(const RationalFunc& f, Var v);

/// True iff every partial derivative with respect to a variable bound in
/// `point` vanishes identically after substitution. Unbound variables are
/// treated as parameters. Throws ZeroDenominator when f's denominator
/// vanishes at the point.
bool is_stationary(const RationalFunc& f, const Bindings& point);

/// Numeric evaluation of a fully bound function.
template <class Real, class Convert>
Real evaluate_as(const RationalFunc& f, const std::array<Real, kNumVars>& point, Convert&& convert) {
  return f.num().evaluate_as(point, convert) / f.den().evaluate_as(point, convert);
}

}  // namespace pinchcert::ca
