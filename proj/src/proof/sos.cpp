#include "pinchcert/proof/sos.hpp"

#include <stdexcept>

namespace pinchcert::proof {

namespace {

Poly sum_of_squares(const std::vector<WeightedSquare>& squares) {
  Poly sum;
  for (const auto& sq : squares) sum += sq.weight * sq.base * sq.base;
  return sum;
}

bool only_domain_vars(const Poly& p, const std::map<Var, Rational>& domain) {
  for (Var v : ca::kAllVars)
    if (p.uses(v) && !domain.contains(v)) return false;
  return true;
}

}  // namespace

SosCertificate make_sos_certificate(std::string name, const RationalFunc& claim,
                                    std::vector<WeightedSquare> squares,
                                    std::map<Var, Rational> domain, bool strict) {
  const Poly target = claim.num() * claim.den();
  if (target.is_zero()) throw std::logic_error("sos certificate for the zero function");
  const auto multiplier = ca::divide_exact(sum_of_squares(squares), target);
  if (!multiplier || !only_domain_vars(*multiplier, domain))
    throw std::logic_error("sos certificate '" + name + "': squares do not match the claim");
  return SosCertificate{std::move(name), claim, *multiplier, std::move(squares), std::move(domain),
                        strict};
}

SosCheck check(const SosCertificate& cert) {
  SosCheck out;
  out.identity = cert.multiplier * cert.claim.num() * cert.claim.den() == sum_of_squares(cert.squares);

  out.weights_nonnegative = true;
  for (const auto& sq : cert.squares)
    if (!sq.weight.is_zero() && !ca::nonnegative_after_shift(sq.weight, cert.domain))
      out.weights_nonnegative = false;

  out.multiplier_positive = ca::positive_after_shift(cert.multiplier, cert.domain);

  out.strictness = !cert.strict;
  for (const auto& sq : cert.squares) {
    if (out.strictness) break;
    out.strictness = sq.base.is_constant() && !sq.base.is_zero() &&
                     ca::positive_after_shift(sq.weight, cert.domain);
  }
  return out;
}

std::vector<WeightedSquare> times_metric_factor(const std::vector<WeightedSquare>& squares) {
  const Poly factors[] = {Poly(1), Poly::variable(Var::a1), Poly::variable(Var::a2)};
  std::vector<WeightedSquare> out;
  for (const auto& sq : squares)
    for (const auto& x : factors) out.push_back({sq.weight, sq.base * x});
  return out;
}

}  // namespace pinchcert::proof
