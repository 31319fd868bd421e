// Python bindings. Results cross the boundary as JSON text; the package
// wrapper decodes them into dicts.

#include "padiclab/corpus.hpp"
#include "padiclab/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace padiclab;

namespace {

std::string dump(const Json& j) { return j.dump(); }

std::string integrate_json(int64_t p, const std::vector<std::pair<std::string, std::string>>& factors, size_t nvars,
                           int64_t depth, int64_t level, const std::vector<std::string>& center,
                           std::optional<bool> exact_tails) {
  Integrand f(p, nvars);
  for (const auto& [poly, e] : factors) f.add_factor(SparsePolynomial::parse(poly, nvars), parse_rational(e));
  Coset c = Coset::whole(nvars);
  c.level = level;
  if (!center.empty()) {
    if (center.size() != nvars) throw DomainError("coset center has the wrong dimension");
    for (size_t i = 0; i < nvars; ++i) c.center[i] = Integer(center[i]);
  }
  validate_coset(c, p);
  const std::vector<Coset> region = {c};
  return dump(to_json(integrate(f, region, depth, IntegrateOptions{exact_tails})));
}

std::string pseudonorm_json(const std::string& curve, size_t form, int64_t depth, int64_t cut) {
  const CurveSetup s = curve_setup_from_json(Json::parse(curve));
  if (form >= s.forms.size()) throw DomainError("form index out of range");
  Json j;
  j["genus"] = s.curve.genus();
  j["pseudonorm"] = to_json(pseudonorm(s.curve, s.forms[form], depth, cut));
  return dump(j);
}

std::string equimeasure_json(const std::string& left, const std::string& right, int64_t depth, int64_t window) {
  const CurveSetup a = curve_setup_from_json(Json::parse(left));
  const CurveSetup b = curve_setup_from_json(Json::parse(right));
  const StepMeasure ma = pushforward(a, depth, window), mb = pushforward(b, depth, window);
  return dump(Json{{"compare", to_json(equimeasurable_compare(ma, mb))},
                   {"left_total", to_json(ma.total())},
                   {"right_total", to_json(mb.total())}});
}

std::string witness_json(int64_t p, const std::string& r, int64_t window, int64_t depth) {
  const WitnessFunction w = witness_construct(p, parse_rational(r));
  std::vector<Rational> samples;
  Integer scale = 1;
  for (int64_t k = 0; k < w.radius_exponent; ++k) scale *= p;
  for (int64_t k = 1; k <= 4; ++k) {
    scale *= p;
    samples.push_back(Rational(Integer(1), scale));
  }
  return dump(Json{{"witness", to_json(w)},
                   {"verification", to_json(witness_verify(w, samples))},
                   {"fourier_nonvanish", to_json(fourier_nonvanish(w, window, depth))}});
}

std::string fourier_json(const std::string& fn, const std::vector<std::string>& taus, int sign) {
  const StepFunction f = step_function_from_json(Json::parse(fn));
  Json values = Json::array();
  for (const auto& t : taus) values.push_back(Json{{"tau", t}, {"value", to_json(fourier_step(f, parse_rational(t), sign))}});
  return dump(Json{{"values", values}, {"inversion_error", static_cast<double>(inversion_error(f))}});
}

HomogeneousPoly homogeneous(const std::string& poly, size_t nvars, const FqField& k) {
  const SparsePolynomial g = polynomial_from_text(poly, std::max<size_t>(nvars, 1));
  return HomogeneousPoly::from_sparse(g.widen(std::max(nvars, g.nvars())), k);
}

std::string count_points_json(const std::string& field, const std::string& poly, size_t nvars, int64_t search) {
  const FqField k = FqField::parse(field);
  const HomogeneousPoly f = homogeneous(poly, nvars, k);
  return dump(Json{{"count", count_points(f, k)}, {"smoothness", to_json(is_smooth(f, k, search))}});
}

std::string verify_json(const std::string& field, const std::string& poly) {
  const FqField k = FqField::parse(field);
  return dump(to_json(verify_nontrivial(homogeneous(poly, 4, k), k)));
}

std::string corpus_json(const std::vector<int>& ids, uint64_t seed) {
  corpus::Options o;
  o.seed = seed;
  std::vector<corpus::CriterionResult> results;
  {
    py::gil_scoped_release release;
    results = corpus::run_all(ids, o);
  }
  Json out = Json::array();
  for (const auto& r : results) out.push_back(corpus::to_json(r, false));
  return dump(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-adic integration, pseudonorms and F_q point existence";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("integrate", &integrate_json, py::arg("p"), py::arg("factors"), py::arg("nvars") = 1,
        py::arg("depth") = 8, py::arg("level") = 0, py::arg("center") = std::vector<std::string>{},
        py::arg("exact_tails") = std::nullopt);
  m.def("pseudonorm", &pseudonorm_json, py::arg("curve"), py::arg("form") = 0, py::arg("depth") = 6,
        py::arg("cut") = 0);
  m.def("equimeasure", &equimeasure_json, py::arg("left"), py::arg("right"), py::arg("depth") = 1,
        py::arg("window") = 1);
  m.def("witness", &witness_json, py::arg("p"), py::arg("r"), py::arg("window") = 2, py::arg("depth") = 2);
  m.def("fourier", &fourier_json, py::arg("fn"), py::arg("taus"), py::arg("sign") = -1);
  m.def("count_points", &count_points_json, py::arg("field"), py::arg("poly"), py::arg("nvars") = 0,
        py::arg("search_degree") = 1);
  m.def("verify_nontrivial", &verify_json, py::arg("field"), py::arg("poly"));
  m.def("theorem_threshold", [](int64_t n, const std::string& hn, const std::string& khn1) {
    return theorem_threshold({n, Integer(hn), Integer(khn1)}).get_str();
  });
  m.def("surface_threshold", [](const std::string& k) { return surface_threshold(Integer(k)).get_str(); });
  m.def("hasse_weil_threshold", [](const std::string& g) { return hasse_weil_threshold(Integer(g)).get_str(); });
  m.def("complete_intersection_threshold", [](const std::vector<std::string>& d) {
    std::vector<Integer> v(d.begin(), d.end());
    return complete_intersection_threshold(v).get_str();
  });
  m.def("corpus", &corpus_json, py::arg("criteria"), py::arg("seed") = corpus::kDefaultSeed);
  m.attr("DEFAULT_SEED") = corpus::kDefaultSeed;
}
