#include "pinchcert/proof/certificate_json.hpp"

#include "pinchcert/ca/text.hpp"

namespace pinchcert::proof {

using nlohmann::ordered_json;

namespace {

std::string frac(const Rational& q) { return ca::to_fraction_string(q); }

ordered_json domain_json(const std::map<Var, Rational>& domain) {
  ordered_json out = ordered_json::object();
  for (const auto& [v, lb] : domain) out[std::string(ca::var_name(v))] = frac(lb);
  return out;
}

}  // namespace

ordered_json to_json(const SosCertificate& cert) {
  ordered_json squares = ordered_json::array();
  for (const auto& sq : cert.squares)
    squares.push_back({{"weight", ca::to_string(sq.weight)}, {"base", ca::to_string(sq.base)}});
  const SosCheck result = check(cert);
  return {{"name", cert.name},
          {"claim", ca::to_string(cert.claim)},
          {"relation", cert.strict ? "> 0" : ">= 0"},
          {"domain", domain_json(cert.domain)},
          {"multiplier", ca::to_string(cert.multiplier)},
          {"squares", squares},
          {"verified", result.ok()}};
}

ordered_json to_json(const PinchCertificate& c) {
  ordered_json b;
  b["status"] = c.b.feasible ? "feasible" : "infeasible";
  b["min_value"] = frac(c.b.min_value);
  b["minimizer"] = {frac(c.b.b_star[0]), frac(c.b.b_star[1]), frac(c.b.b_star[2])};
  if (c.b.zero) {
    const auto& z = *c.b.zero;
    b["zero"] = {to_decimal_string(z[0]), to_decimal_string(z[1]), to_decimal_string(z[2])};
    b["zero_residual"] = to_decimal_string(c.b.zero_residual, 6);
  }
  if (c.closed_form_b) {
    const auto& p = *c.closed_form_b;
    b["closed_form"] = {{"a1", frac(p.a1)},
                        {"a2", frac(p.a2)},
                        {"radicand", frac(p.radicand)},
                        {"b", {to_decimal_string(p.b[0]), to_decimal_string(p.b[1]), to_decimal_string(p.b[2])}},
                        {"residual", to_decimal_string(p.residual, 6)},
                        {"passed", p.passed}};
  }

  ordered_json sos = ordered_json::array();
  for (const auto& cert : c.certificates) sos.push_back(to_json(cert));
  ordered_json checks = ordered_json::object();
  for (const auto& ch : c.checks) checks[ch.name] = ch.passed;

  ordered_json out;
  out["schema_version"] = kCertificateSchemaVersion;
  out["n"] = c.n;
  out["t"] = frac(c.t);
  out["branch"] = branch_name(c.branch);
  out["epsilon_threshold"] = frac(c.epsilon);
  out["requires_constant_scalar_curvature"] = c.requires_constant_scalar;
  out["bach_flat"] = c.bach_flat;
  out["parameters"] = {{"a1", frac(c.a1)}, {"a2", frac(c.a2)}, {"h", frac(c.h)}, {"s", frac(c.s)},
                       {"eps", frac(c.epsilon)}, {"attaining_locus", c.attaining_locus}};
  out["q_coefficients"] = {{"q0", ca::to_string(c.q0)},
                           {"q1", ca::to_string(c.q1)},
                           {"q2", ca::to_string(c.q2)},
                           {"q_rrc", frac(c.q_rrc)},
                           {"q3rc", frac(c.q3rc)}};
  out["b_feasibility"] = b;
  out["sos"] = sos;
  out["checks"] = checks;
  out["valid"] = c.valid();
  out["notes"] = c.notes;
  return out;
}

}  // namespace pinchcert::proof
