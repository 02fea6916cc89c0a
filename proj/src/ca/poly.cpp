#include "pinchcert/ca/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pinchcert::ca {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames{"a1", "a2", "b1", "b2", "b3",
                                                        "t",  "n",  "eps", "s"};

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial mono_mul(const Monomial& x, const Monomial& y) {
  Monomial r{};
  for (std::size_t i = 0; i < kNumVars; ++i) r[i] = x[i] + y[i];
  return r;
}

Monomial mono_div(const Monomial& x, const Monomial& y) {
  Monomial r{};
  for (std::size_t i = 0; i < kNumVars; ++i) r[i] = x[i] - y[i];
  return r;
}

std::optional<Var> first_used_var(const Poly& p, const Poly& q) {
  for (Var v : kAllVars)
    if (p.uses(v) || q.uses(v)) return v;
  return std::nullopt;
}

// Rescales to integer coefficients with unit content; keeps the sign.
Poly clear_rational_content(const Poly& p) {
  if (p.is_zero()) return p;
  Integer g = 0;
  Integer l = 1;
  for (const auto& [m, c] : p.terms()) {
    g = boost::multiprecision::gcd(g, numerator_of(c));
    l = boost::multiprecision::lcm(l, denominator_of(c));
  }
  Poly r = p;
  r *= Rational(l, g);
  return r;
}

Monomial min_exponents(const Poly& p) {
  Monomial m = p.terms().begin()->first;
  for (const auto& [t, c] : p.terms())
    for (std::size_t i = 0; i < kNumVars; ++i) m[i] = std::min(m[i], t[i]);
  return m;
}

Poly strip_monomial(const Poly& p, const Monomial& m) {
  Poly r;
  for (const auto& [t, c] : p.terms()) r += Poly::term(mono_div(t, m), c);
  return r;
}

Poly leading_coefficient_in(const Poly& p, Var v) { return p.coefficients_in(v).rbegin()->second; }

// lc(b)^(deg a - deg b + 1) * a = q * b + r.
Poly classical_prem(const Poly& a, const Poly& b, Var v) {
  const unsigned db = b.degree(v);
  const Poly lcb = leading_coefficient_in(b, v);
  unsigned steps = a.degree(v) - db + 1;
  Poly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    const unsigned dr = r.degree(v);
    const Poly lcr = leading_coefficient_in(r, v);
    Monomial shift_m{};
    shift_m[index_of(v)] = dr - db;
    r = lcb * r - lcr * Poly::term(shift_m, Rational(1)) * b;
    --steps;
  }
  return steps == 0 ? r : r * lcb.pow(steps);
}

}  // namespace

std::string_view var_name(Var v) { return kNames[index_of(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (kNames[i] == name) return kAllVars[i];
  return std::nullopt;
}

unsigned total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0u);
}

bool GrlexGreater::operator()(const Monomial& x, const Monomial& y) const {
  const unsigned dx = total_degree(x);
  const unsigned dy = total_degree(y);
  if (dx != dy) return dx > dy;
  return x > y;  // lexicographic with a1 most significant
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(Var v) {
  Monomial m{};
  m[index_of(v)] = 1;
  return term(m, Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

unsigned Poly::degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

unsigned Poly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[index_of(v)]);
  return d;
}

bool Poly::uses(Var v) const { return degree(v) > 0; }

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& [mp, cp] : p.terms_)
    for (const auto& [mq, cq] : q.terms_) r.add_term(mono_mul(mp, mq), cp * cq);
  return r;
}

Poly& Poly::operator*=(const Poly& q) { return *this = *this * q; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, k] : terms_) k *= c;
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly result(Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly pow(const Poly& p, unsigned e) { return p.pow(e); }

Poly Poly::derivative(Var v) const {
  const std::size_t i = index_of(v);
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] -= 1;
    r.add_term(d, c * m[i]);
  }
  return r;
}

std::map<unsigned, Poly> Poly::coefficients_in(Var v) const {
  const std::size_t i = index_of(v);
  std::map<unsigned, Poly> out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[i] = 0;
    out[m[i]].add_term(rest, c);
  }
  return out;
}

Poly Poly::evaluate(const std::map<Var, Rational>& point) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    Rational k = c;
    for (const auto& [v, value] : point) {
      const std::size_t i = index_of(v);
      if (rest[i] == 0) continue;
      for (std::uint32_t e = 0; e < rest[i]; ++e) k *= value;
      rest[i] = 0;
    }
    r.add_term(rest, k);
  }
  return r;
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw ZeroDenominator("polynomial division by zero");
  const Monomial& lm = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  Poly quotient;
  Poly rem = p;
  while (!rem.is_zero()) {
    const Monomial m = rem.leading_monomial();
    if (!divides(lm, m)) return std::nullopt;
    Poly t = Poly::term(mono_div(m, lm), rem.leading_coefficient() / lc);
    quotient += t;
    rem -= t * d;
  }
  return quotient;
}

Poly exact_quotient(const Poly& p, const Poly& d) {
  auto q = divide_exact(p, d);
  if (!q) throw std::logic_error("polynomial division is not exact");
  return *std::move(q);
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  Poly r = p;
  r *= Rational(1) / p.leading_coefficient();
  return r;
}

Poly content_in(const Poly& p, Var v) {
  Poly g;
  for (const auto& [k, c] : p.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Poly primitive_part_in(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  return exact_quotient(p, content_in(p, v));
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
  const unsigned db = b.degree(v);
  if (db == 0) throw std::logic_error("pseudo_remainder: divisor is constant in the variable");
  const auto bc = b.coefficients_in(v);
  const Poly& lcb = bc.rbegin()->second;
  Poly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    const unsigned dr = r.degree(v);
    const Poly lcr = r.coefficients_in(v).rbegin()->second;
    Monomial shift_m{};
    shift_m[index_of(v)] = dr - db;
    r = lcb * r - lcr * Poly::term(shift_m, Rational(1)) * b;
    r = clear_rational_content(r);
  }
  return r;
}

Poly gcd(const Poly& p, const Poly& q) {
  if (p.is_zero()) return make_monic(q);
  if (q.is_zero()) return make_monic(p);
  if (p.is_constant() || q.is_constant()) return Poly(Rational(1));

  // Split off monomial contents first; gcd(x*p', y*q') = gcd(x, y) * gcd(p', q').
  const Monomial mp = min_exponents(p);
  const Monomial mq = min_exponents(q);
  if (total_degree(mp) > 0 || total_degree(mq) > 0) {
    Monomial common{};
    for (std::size_t i = 0; i < kNumVars; ++i) common[i] = std::min(mp[i], mq[i]);
    return Poly::term(common, Rational(1)) *
           gcd(strip_monomial(p, mp), strip_monomial(q, mq));
  }

  // A variable present in only one operand cannot occur in the gcd.
  for (Var v : kAllVars) {
    const bool in_p = p.uses(v);
    const bool in_q = q.uses(v);
    if (in_p && !in_q) return gcd(content_in(p, v), q);
    if (in_q && !in_p) return gcd(p, content_in(q, v));
  }

  // Main variable: smallest combined degree keeps the remainder sequence short.
  Var v = *first_used_var(p, q);
  unsigned best = p.degree(v) + q.degree(v);
  for (Var w : kAllVars) {
    if (!p.uses(w)) continue;
    const unsigned d = p.degree(w) + q.degree(w);
    if (d < best) {
      best = d;
      v = w;
    }
  }

  if (auto quotient = divide_exact(p, q)) return make_monic(q);
  if (auto quotient = divide_exact(q, p)) return make_monic(p);

  const Poly cp = content_in(p, v);
  const Poly cq = content_in(q, v);
  const Poly c = gcd(cp, cq);
  Poly a = exact_quotient(p, cp);
  Poly b = exact_quotient(q, cq);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);

  // Subresultant PRS (Collins): remainders are divided by g * h^delta, an
  // exact division that keeps coefficient growth polynomial.
  Poly g(Rational(1));
  Poly h(Rational(1));
  while (true) {
    const unsigned delta = a.degree(v) - b.degree(v);
    Poly r = classical_prem(a, b, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) return make_monic(c);
    a = std::move(b);
    b = exact_quotient(r, g * h.pow(delta));
    g = leading_coefficient_in(a, v);
    if (delta >= 1) h = exact_quotient(g.pow(delta), h.pow(delta - 1));
  }
  return make_monic(c * primitive_part_in(b, v));
}

Poly shift(const Poly& p, Var v, const Rational& offset) {
  if (offset == 0) return p;
  const Poly x = Poly::variable(v) + Poly(offset);
  Poly r;
  for (const auto& [k, c] : p.coefficients_in(v)) r += c * x.pow(k);
  return r;
}

bool nonnegative_after_shift(const Poly& p, const std::map<Var, Rational>& lower) {
  for (Var v : kAllVars)
    if (p.uses(v) && !lower.contains(v)) return false;
  Poly shifted = p;
  for (const auto& [v, lb] : lower) shifted = shift(shifted, v, lb);
  return std::all_of(shifted.terms().begin(), shifted.terms().end(),
                     [](const auto& kv) { return kv.second > 0; });
}

bool positive_after_shift(const Poly& p, const std::map<Var, Rational>& lower) {
  if (!nonnegative_after_shift(p, lower)) return false;
  Poly shifted = p;
  for (const auto& [v, lb] : lower) shifted = shift(shifted, v, lb);
  return shifted.constant_term() > 0;
}

}  // namespace pinchcert::ca
