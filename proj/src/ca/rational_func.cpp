#include "pinchcert/ca/rational_func.hpp"

#include <stdexcept>
#include <vector>

namespace pinchcert::ca {

RationalFunc::RationalFunc(const Poly& num, const Poly& den)
    : RationalFunc(normalize(unnormalized(num, den))) {}

RationalFunc RationalFunc::unnormalized(Poly num, Poly den) {
  if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  RationalFunc f;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

bool RationalFunc::is_normalized() const {
  if (den_.leading_coefficient() != 1) return false;
  if (num_.is_zero()) return den_ == Poly(Rational(1));
  return gcd(num_, den_) == Poly(Rational(1));
}

Rational RationalFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RationalFunc normalize(const RationalFunc& f) {
  if (f.den().is_zero()) throw ZeroDenominator("rational function with zero denominator");
  if (f.num().is_zero()) return RationalFunc::unnormalized(Poly(), Poly(Rational(1)));
  Poly num = f.num();
  Poly den = f.den();
  const Poly g = gcd(num, den);
  if (!(g == Poly(Rational(1)))) {
    num = exact_quotient(num, g);
    den = exact_quotient(den, g);
  }
  const Rational lc = den.leading_coefficient();
  if (lc != 1) {
    num *= Rational(1) / lc;
    den *= Rational(1) / lc;
  }
  return RationalFunc::unnormalized(std::move(num), std::move(den));
}

bool equivalent(const RationalFunc& f, const RationalFunc& g) {
  return f.num() * g.den() == g.num() * f.den();
}

RationalFunc RationalFunc::operator-() const { return unnormalized(-num_, den_); }

RationalFunc operator+(const RationalFunc& f, const RationalFunc& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.den_ == g.den_) return RationalFunc(f.num_ + g.num_, f.den_);
  return RationalFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
}

RationalFunc operator-(const RationalFunc& f, const RationalFunc& g) { return f + (-g); }

RationalFunc operator*(const RationalFunc& f, const RationalFunc& g) {
  if (f.is_zero() || g.is_zero()) return RationalFunc();
  return RationalFunc(f.num_ * g.num_, f.den_ * g.den_);
}

RationalFunc operator/(const RationalFunc& f, const RationalFunc& g) {
  if (g.is_zero()) throw ZeroDenominator("division by the zero rational function");
  return RationalFunc(f.num_ * g.den_, f.den_ * g.num_);
}

RationalFunc RationalFunc::pow(int e) const {
  if (e < 0) return RationalFunc(Rational(1)) / pow(-e);
  return RationalFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

namespace {

struct Substituted {
  Poly num;
  Poly den;
};

// p(x_v := N_v / D_v) written over the common denominator prod_v D_v^{deg_v p}.
Substituted substitute_poly(const Poly& p, const Bindings& bindings) {
  struct Slot {
    std::size_t index;
    unsigned degree;
    std::vector<Poly> num_pows;
    std::vector<Poly> den_pows;
  };
  std::vector<Slot> slots;
  for (const auto& [v, value] : bindings) {
    const unsigned d = p.degree(v);
    if (d == 0) continue;
    Slot slot{index_of(v), d, {Poly(Rational(1))}, {Poly(Rational(1))}};
    for (unsigned k = 1; k <= d; ++k) {
      slot.num_pows.push_back(slot.num_pows.back() * value.num());
      slot.den_pows.push_back(slot.den_pows.back() * value.den());
    }
    slots.push_back(std::move(slot));
  }

  Substituted out{Poly(), Poly(Rational(1))};
  for (const auto& slot : slots) out.den *= slot.den_pows[slot.degree];

  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    Poly term = Poly(c);
    for (const auto& slot : slots) {
      const unsigned e = m[slot.index];
      rest[slot.index] = 0;
      term *= slot.num_pows[e];
      term *= slot.den_pows[slot.degree - e];
    }
    out.num += term * Poly::term(rest, Rational(1));
  }
  return out;
}

}  // namespace

RationalFunc substitute(const RationalFunc& f, const Bindings& bindings) {
  const Substituted top = substitute_poly(f.num(), bindings);
  const Substituted bottom = substitute_poly(f.den(), bindings);
  if (bottom.num.is_zero())
    throw ZeroDenominator("substitution makes the denominator identically zero");
  return RationalFunc(top.num * bottom.den, top.den * bottom.num);
}

RationalFunc substitute(const RationalFunc& f, const std::map<Var, Rational>& point) {
  const Poly num = f.num().evaluate(point);
  const Poly den = f.den().evaluate(point);
  if (den.is_zero()) throw ZeroDenominator("denominator vanishes at the evaluation point");
  return RationalFunc(num, den);
}

RationalFunc derivative(const RationalFunc& f, Var v) {
  const Poly& a = f.num();
  const Poly& b = f.den();
  if (!b.uses(v)) {
    Poly num = a.derivative(v);
    return RationalFunc(num, b);
  }
  return RationalFunc(a.derivative(v) * b - a * b.derivative(v), b * b);
}

bool is_stationary(const RationalFunc& f, const Bindings& point) {
  // Raises ZeroDenominator when the point is a pole.
  (void)substitute(f, point);
  for (const auto& [v, value] : point) {
    if (!substitute(derivative(f, v), point).is_zero()) return false;
  }
  return true;
}

}  // namespace pinchcert::ca
