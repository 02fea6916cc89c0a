#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pinchcert/cli/cli.hpp"
#include "pinchcert/ineq/inequalities.hpp"
#include "pinchcert/models/model_spaces.hpp"
#include "pinchcert/proof/certificate_json.hpp"
#include "pinchcert/tensor/random.hpp"
#include "pinchcert/verify/suites.hpp"

namespace py = pybind11;
using namespace pinchcert;
using ca::Rational;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

namespace {

std::vector<double> flat(const Array& a, int rank, int& n) {
  if (a.ndim() != rank) throw std::invalid_argument("expected an array of rank " + std::to_string(rank));
  n = static_cast<int>(a.shape(0));
  for (int k = 1; k < rank; ++k)
    if (a.shape(k) != n) throw std::invalid_argument("all axes must have the same length");
  return std::vector<double>(a.data(), a.data() + a.size());
}

tensor::Sym<double> to_sym(const Array& a) {
  int n = 0;
  auto v = flat(a, 2, n);
  return tensor::Sym<double>::from_entries(n, std::move(v));
}

tensor::Curv<double> to_curv(const Array& a) {
  int n = 0;
  auto v = flat(a, 4, n);
  return tensor::Curv<double>::from_entries(n, std::move(v));
}

tensor::Three<double> to_three(const Array& a) {
  int n = 0;
  auto v = flat(a, 3, n);
  return tensor::Three<double>::from_entries(n, std::move(v));
}

Array from_entries(const std::vector<double>& v, int n, int rank) {
  std::vector<py::ssize_t> shape(rank, n);
  Array out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Rational rational(const std::string& s) { return ca::parse_rational(s); }

std::string certificate_json(int n, const std::string& t) {
  return proof::to_json(proof::theorem_lookup(n, rational(t))).dump();
}

py::dict report(const ineq::IneqReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["n"] = r.n;
  d["eps"] = r.eps;
  d["s"] = r.s ? py::cast(*r.s) : py::none();
  d["witness"] = r.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact pinching thresholds and curvature-tensor checks";

  py::register_exception<ineq::HypothesisUnverified>(m, "HypothesisUnverified", PyExc_ValueError);
  py::register_exception<ineq::SOutOfRange>(m, "SOutOfRange", PyExc_ValueError);
  py::register_exception<ineq::NonTracelessInput>(m, "NonTracelessInput", PyExc_ValueError);
  py::register_exception<tensor::SymmetryViolation>(m, "SymmetryViolation", PyExc_ValueError);
  py::register_exception<tensor::DimensionTooSmall>(m, "DimensionTooSmall", PyExc_ValueError);
  py::register_exception<ca::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "epsilon_threshold",
      [](int n, const std::string& t) { return ca::to_string(proof::theorem_lookup(n, rational(t)).epsilon); },
      py::arg("n"), py::arg("t"), "Pinching threshold as an exact fraction string.");
  m.def("certificate_json", &certificate_json, py::arg("n"), py::arg("t"), "Full certificate as JSON text.");
  m.def(
      "optimize_eps",
      [](int n, const std::string& t) {
        const auto o = proof::optimize_eps(n, rational(t));
        py::dict d;
        d["a1"] = ca::to_string(o.a1);
        d["a2"] = ca::to_string(o.a2);
        d["h"] = ca::to_string(o.h);
        d["epsilon"] = ca::to_string(o.epsilon);
        d["attaining_locus"] = o.attaining_locus;
        return d;
      },
      py::arg("n"), py::arg("t"));
  m.def(
      "solve_s",
      [](const std::string& a1, const std::string& a2, int n) {
        return ca::to_string(proof::solve_s(rational(a1), rational(a2), Rational(n)));
      },
      py::arg("a1"), py::arg("a2"), py::arg("n"));
  m.def(
      "eps_bound",
      [](const std::string& a1, const std::string& a2, int n, const std::string& t) {
        return ca::to_string(proof::eps_bound(rational(a1), rational(a2), Rational(n), rational(t)));
      },
      py::arg("a1"), py::arg("a2"), py::arg("n"), py::arg("t"));

  m.def(
      "random_curvature",
      [](int n, std::uint64_t seed) {
        tensor::Rng rng(seed);
        return from_entries(tensor::random_curvature(n, rng).entries(), n, 4);
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "random_positive_curvature",
      [](int n, std::uint64_t seed) {
        tensor::Rng rng(seed);
        const auto s = tensor::random_positive_curvature(n, rng);
        return py::make_tuple(from_entries(s.R.entries(), n, 4), s.sec_min);
      },
      py::arg("n"), py::arg("seed") = 0, "(R, min sectional curvature), metric = identity.");
  m.def(
      "sectional",
      [](const Array& R, const Array& g, const std::vector<double>& x, const std::vector<double>& y) {
        return tensor::sectional(to_curv(R), to_sym(g), x, y);
      },
      py::arg("R"), py::arg("g"), py::arg("x"), py::arg("y"));
  m.def(
      "min_sectional",
      [](const Array& R, const Array& g, int restarts, std::uint64_t seed) {
        tensor::MinSectionalOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        const auto r = tensor::min_sectional(to_curv(R), to_sym(g), opt);
        return py::make_tuple(r.value, r.plane.x, r.plane.y);
      },
      py::arg("R"), py::arg("g"), py::arg("restarts") = 12, py::arg("seed") = 0);
  m.def(
      "ricci", [](const Array& R, const Array& g) {
        const auto ric = tensor::ricci(to_curv(R), to_sym(g));
        return from_entries(ric.entries(), ric.dim(), 2);
      },
      py::arg("R"), py::arg("g"));
  m.def(
      "scalar", [](const Array& R, const Array& g) { return tensor::scalar(to_curv(R), to_sym(g)); }, py::arg("R"),
      py::arg("g"));
  m.def(
      "decompose",
      [](const Array& R, const Array& g) {
        const auto d = tensor::decompose(to_curv(R), to_sym(g));
        const int n = d.weyl.dim();
        return py::make_tuple(from_entries(d.weyl.entries(), n, 4), from_entries(d.traceless_ricci.entries(), n, 2),
                              d.scalar);
      },
      py::arg("R"), py::arg("g"), "(W, traceless Ricci, R)");

  m.def(
      "prop21_first", [](const Array& R, const Array& g, double eps) {
        return report(ineq::prop21_first(to_curv(R), to_sym(g), eps));
      },
      py::arg("R"), py::arg("g"), py::arg("eps"));
  m.def(
      "prop21_second", [](const Array& R, const Array& g, double eps) {
        return report(ineq::prop21_second(to_curv(R), to_sym(g), eps));
      },
      py::arg("R"), py::arg("g"), py::arg("eps"));
  m.def(
      "cor_sec", [](const Array& R, const Array& g, double eps, double s) {
        return report(ineq::cor_sec(to_curv(R), to_sym(g), eps, s));
      },
      py::arg("R"), py::arg("g"), py::arg("eps"), py::arg("s"));
  m.def(
      "f_norm_identity",
      [](const Array& T, double a1, double a2, double b1, double b2, double b3) {
        const auto r = ineq::f_norm_identity(to_three(T), {a1, a2, b1, b2, b3});
        return py::make_tuple(r.direct, r.formula);
      },
      py::arg("grad_ric"), py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("b3"));
  m.def(
      "weitzenboeck_contract",
      [](const Array& R, const Array& g, const Array& r, const Array& hess, double t) {
        const auto w = ineq::weitzenboeck_contract(to_curv(R), to_sym(g), to_sym(r), to_sym(hess), t);
        return py::make_tuple(w.direct, w.formula);
      },
      py::arg("R"), py::arg("g"), py::arg("r"), py::arg("hess"), py::arg("t"));

  m.def("model_names", [] {
    std::vector<std::string> names;
    for (const auto& s : models::standard_fixtures()) names.push_back(s.name);
    return names;
  });
  m.def(
      "model_space",
      [](const std::string& name) {
        for (const auto& s : models::standard_fixtures())
          if (s.name == name) {
            py::dict d;
            d["name"] = s.name;
            d["metric"] = from_entries(tensor::to_double(s.metric).entries(), s.dim, 2);
            d["curvature"] = from_entries(tensor::to_double(s.curvature).entries(), s.dim, 4);
            d["scalar"] = ca::to_string(s.known.scalar);
            d["sec_min"] = ca::to_string(s.known.sec_min);
            d["sec_max"] = ca::to_string(s.known.sec_max);
            d["einstein"] = s.known.einstein;
            return d;
          }
        throw py::key_error(name);
      },
      py::arg("name"));

  m.def(
      "verify_json",
      [](const std::string& suite, std::uint64_t seed, int samples, const std::vector<int>& dims) {
        verify::SuiteConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.dims = dims;
        py::gil_scoped_release release;
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& r : verify::run_suite(suite, cfg)) out.push_back(verify::to_json(r));
        return out.dump();
      },
      py::arg("suite"), py::arg("seed") = 0, py::arg("samples") = 0, py::arg("dims") = std::vector<int>{});
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command line; returns (exit code, stdout, stderr).");
}
