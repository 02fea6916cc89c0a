#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "pinchcert/ca/rational.hpp"

namespace pinchcert::ca {

// The coefficient algebra lives in a fixed, ordered set of nine variables.
// Order matters: it is the tie-break of the graded lexicographic order.
enum class Var : std::uint8_t { a1, a2, b1, b2, b3, t, n, eps, s };

inline constexpr std::size_t kNumVars = 9;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::a1, Var::a2, Var::b1, Var::b2, Var::b3,
                                                    Var::t,  Var::n,  Var::eps, Var::s};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

inline constexpr std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }

using Monomial = std::array<std::uint32_t, kNumVars>;

unsigned total_degree(const Monomial& m);

// Graded lexicographic, descending: the first element of a Poly's term map is
// its leading term.
struct GrlexGreater {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(Var v);
  static Poly term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 when absent).
  Rational constant_term() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  unsigned degree() const;
  unsigned degree(Var v) const;
  bool uses(Var v) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& q);
  Poly& operator-=(const Poly& q);
  Poly& operator*=(const Poly& q);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(const Poly& p, const Poly& q);
  friend bool operator==(const Poly& p, const Poly& q) { return p.terms_ == q.terms_; }

  Poly pow(unsigned e) const;
  Poly derivative(Var v) const;

  /// Collects the polynomial as sum_k c_k v^k with v-free coefficients.
  std::map<unsigned, Poly> coefficients_in(Var v) const;

  /// Partial evaluation: assigned variables are replaced by their values.
  Poly evaluate(const std::map<Var, Rational>& point) const;

  /// Full evaluation in any field type constructible from a Rational.
  template <class Real, class Convert>
  Real evaluate_as(const std::array<Real, kNumVars>& point, Convert&& convert) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

Poly pow(const Poly& p, unsigned e);

/// p / d when d divides p exactly, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& p, const Poly& d);
/// p / d, throws std::logic_error when d does not divide p.
Poly exact_quotient(const Poly& p, const Poly& d);

/// Scales p so that its leading coefficient is 1 (zero stays zero).
Poly make_monic(const Poly& p);

/// Greatest common divisor over Q, monic. gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);

/// Gcd of the coefficients of p viewed as a polynomial in v.
Poly content_in(const Poly& p, Var v);
Poly primitive_part_in(const Poly& p, Var v);

/// Sparse pseudo-remainder of a by b in v; deg_v(b) >= 1.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);

/// True when every coefficient of p(x + lower) is >= 0 for the shifted
/// variables; with a positive constant term this proves p > 0 wherever every
/// listed variable is >= its lower bound (p may only use listed variables).
bool nonnegative_after_shift(const Poly& p, const std::map<Var, Rational>& lower);
bool positive_after_shift(const Poly& p, const std::map<Var, Rational>& lower);

/// p with v replaced by v + offset.
Poly shift(const Poly& p, Var v, const Rational& offset);

template <class Real, class Convert>
Real Poly::evaluate_as(const std::array<Real, kNumVars>& point, Convert&& convert) const {
  Real acc = convert(Rational(0));
  for (const auto& [m, c] : terms_) {
    Real term = convert(c);
    for (std::size_t i = 0; i < kNumVars; ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

}  // namespace pinchcert::ca
