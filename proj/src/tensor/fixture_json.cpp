#include "pinchcert/tensor/fixture_json.hpp"

namespace pinchcert::tensor {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class S, class F>
ordered_json build(const std::string& name, const Sym<S>& g, const Curv<S>& R, F&& entry) {
  ordered_json metric = ordered_json::array(), curv = ordered_json::array();
  for (const S& x : g.entries()) metric.push_back(entry(x));
  for (const S& x : R.entries()) curv.push_back(entry(x));
  return {{"convention", kConventionTag}, {"name", name},   {"dim", R.dim()},
          {"metric", metric},           {"curvature", curv}};
}

double read_entry(const json& x) {
  if (x.is_number()) return x.get<double>();
  if (x.is_string()) return to_double(ca::parse_rational(x.get<std::string>()));
  throw std::invalid_argument("fixture entry must be a number or a rational string");
}

std::vector<double> read_array(const json& a, std::size_t size) {
  if (!a.is_array() || a.size() != size) throw DimensionMismatch("fixture array has the wrong length");
  std::vector<double> out;
  out.reserve(size);
  for (const auto& x : a) out.push_back(read_entry(x));
  return out;
}

}  // namespace

ordered_json fixture_to_json(const std::string& name, const Sym<Rational>& g, const Curv<Rational>& R) {
  return build(name, g, R, [](const Rational& q) { return ca::to_fraction_string(q); });
}

ordered_json fixture_to_json(const std::string& name, const Sym<double>& g, const Curv<double>& R) {
  return build(name, g, R, [](double x) { return x; });
}

Fixture fixture_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("fixture must be a JSON object");
  if (j.value("convention", std::string()) != kConventionTag)
    throw std::invalid_argument("fixture has a missing or unknown convention tag");
  const int n = j.at("dim").get<int>();
  if (n < 2) throw DimensionTooSmall("fixture dimension must be at least 2");
  const std::size_t nn = static_cast<std::size_t>(n);
  Fixture f;
  f.name = j.value("name", std::string());
  f.metric = Sym<double>::from_entries(n, read_array(j.at("metric"), nn * nn));
  f.curvature = Curv<double>::from_entries(n, read_array(j.at("curvature"), nn * nn * nn * nn));
  return f;
}

}  // namespace pinchcert::tensor
