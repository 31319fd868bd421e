#include "padiclab/io.hpp"

#include <fstream>
#include <sstream>

namespace padiclab {

namespace {

Json optional_radical(const std::optional<RadicalValue>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

std::string elems(const std::vector<FqField::Elem>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

Json to_json(const Rational& x) { return Json{{"exact", x.get_str()}, {"decimal", to_double(x)}}; }

Json to_json(const RadicalValue& x) {
  return Json{{"exact", x.to_string()}, {"generator", x.generator()}, {"decimal", x.to_double()}};
}

Json to_json(const IntegralResult& r) {
  Json j;
  j["lower"] = to_json(r.lower);
  j["upper"] = optional_radical(r.upper);
  j["exact"] = r.exact();
  j["bounded"] = r.bounded();
  j["width"] = r.bounded() ? to_json(r.width()) : Json(nullptr);
  j["resolved_sum"] = to_json(r.resolved_sum);
  j["unresolved_mass"] = r.unresolved_mass.get_str();
  j["depth"] = r.depth;
  j["resolved_cosets"] = r.resolved_cosets;
  j["tail_cosets"] = r.tail_cosets;
  j["capped_cosets"] = r.capped_cosets;
  return j;
}

Json to_json(const MassEnclosure& m) {
  return Json{{"lower", to_json(m.lower)}, {"upper", optional_radical(m.upper)}};
}

Json to_json(const StepMeasure& m) {
  Json j;
  j["p"] = m.prime();
  j["dimension"] = m.dim();
  j["depth"] = m.depth();
  j["window"] = m.window();
  Json rows = Json::array();
  for (const auto& [k, mass] : m.assigned()) {
    Json center = Json::array();
    for (const auto& c : m.center(k)) center.push_back(c.get_str());
    rows.push_back(Json{{"center", center}, {"level", m.depth()}, {"mass", to_json(m.enclosure(k))}});
  }
  j["cosets"] = rows;
  j["outside_window"] = to_json(m.outside());
  j["undetermined"] = optional_radical(m.undetermined());
  j["overflow"] = to_json(m.overflow());
  j["total"] = to_json(m.total());
  j["source_cosets"] = m.source_cosets;
  return j;
}

Json to_json(const IsometryReport& r) {
  Json rows = Json::array();
  for (const auto& s : r.samples) {
    Json v = Json::array();
    for (const auto& x : s.v) v.push_back(x.get_str());
    rows.push_back(Json{{"v", v},
                        {"left", to_json(s.left)},
                        {"right", to_json(s.right)},
                        {"intersect", s.intersect},
                        {"exact_equal", s.exact_equal}});
  }
  return Json{{"verdict", r.consistent() ? "isometry-consistent" : "not-isometric"},
              {"samples", r.samples.size()},
              {"disjoint", r.disjoint_count()},
              {"routes_agree", r.routes_agree},
              {"rows", rows}};
}

Json to_json(const CompareReport& r) {
  Json j;
  j["verdict"] = r.equal ? "EQUAL" : "NOT-EQUAL";
  j["gap"] = to_json(r.gap);
  j["max_difference"] = optional_radical(r.max_difference);
  if (r.witness) {
    Json k = Json::array();
    for (const auto& x : *r.witness) k.push_back(x.get_str());
    j["witness_key"] = k;
  } else {
    j["witness_key"] = nullptr;
  }
  j["overflow_witness"] = r.overflow_witness;
  return j;
}

Json to_json(const PhaseSum& s) {
  Json terms = Json::array();
  for (const auto& [th, c] : s.terms()) terms.push_back(Json{{"phase", th.get_str()}, {"coefficient", to_json(c)}});
  const auto v = s.value();
  return Json{{"exact", s.to_string()},
              {"terms", terms},
              {"re", static_cast<double>(v.real())},
              {"im", static_cast<double>(v.imag())},
              {"abs", static_cast<double>(std::abs(v))}};
}

Json to_json(const StepFunction& f) {
  Json rows = Json::array();
  for (const auto& c : f.cosets()) {
    rows.push_back(Json{{"center", c.center.get_str()}, {"level", c.level}, {"value", to_json(c.value)}});
  }
  return Json{{"p", f.prime()}, {"cosets", rows}};
}

Json to_json(const WitnessFunction& w) {
  Json terms = Json::array();
  for (const auto& t : w.terms) terms.push_back(Json{{"a", to_json(t.a)}, {"c", t.c.get_str()}});
  return Json{{"p", w.p},
              {"r", w.r.get_str()},
              {"terms", terms},
              {"support_radius", ipow(w.p, static_cast<uint64_t>(std::max<int64_t>(w.radius_exponent, 0))).get_str()},
              {"radius_exponent", w.radius_exponent},
              {"constraint", to_json(w.constraint())},
              {"f0_at_zero", to_json(w.evaluate(0))}};
}

Json to_json(const WitnessReport& r) {
  Json rows = Json::array();
  for (const auto& s : r.samples) {
    rows.push_back(Json{{"s", s.s.get_str()}, {"value", to_json(s.value)}, {"outside_radius", s.outside}});
  }
  return Json{{"ok", r.ok()},
              {"constraint_holds", r.constraint_holds},
              {"zero_value_ok", r.zero_value_ok},
              {"value_at_zero", to_json(r.value_at_zero)},
              {"outside_checked", r.outside_checked},
              {"outside_failures", r.outside_failures},
              {"constancy_checked", r.constancy_checked},
              {"constancy_failures", r.constancy_failures},
              {"samples", rows}};
}

Json to_json(const NonvanishReport& r) {
  Json dil = Json::array();
  for (const auto& d : r.dilations) {
    dil.push_back(Json{{"tau", d.tau.get_str()},
                       {"value", to_json(d.dilated)},
                       {"exact", d.exact},
                       {"error", static_cast<double>(d.error)}});
  }
  return Json{{"found", r.tau0.has_value()},
              {"tau0", r.tau0 ? Json(r.tau0->get_str()) : Json(nullptr)},
              {"value", to_json(r.value)},
              {"magnitude", static_cast<double>(r.magnitude)},
              {"error_bound", static_cast<double>(r.error_bound)},
              {"transform_at_zero", to_json(r.at_zero)},
              {"scanned", r.scanned},
              {"dilation_checks", dil}};
}

Json to_json(const SmoothnessResult& s) {
  return Json{{"verdict", to_string(s.verdict)},
              {"method", s.method},
              {"witness", s.witness ? Json(elems(*s.witness)) : Json(nullptr)},
              {"witness_degree", s.witness_degree},
              {"searched_degree", s.searched_degree},
              {"macaulay_rank", s.macaulay_rank},
              {"macaulay_columns", s.macaulay_columns}};
}

Json to_json(const HasseWeilCheck& h) {
  return Json{{"lhs", h.lhs.get_str()}, {"rhs", h.rhs.get_str()}, {"margin", h.margin().get_str()}, {"pass", h.pass}};
}

Json to_json(const NontrivialCertificate& c) {
  Json j;
  j["ok"] = c.ok();
  j["failed_stage"] = c.failed_stage.empty() ? Json(nullptr) : Json(c.failed_stage);
  j["failure_detail"] = c.failure_detail;
  j["q"] = c.q;
  j["degree"] = c.degree;
  j["profile"] = Json{{"n", c.profile.n}, {"Hn", c.profile.hn.get_str()}, {"KHn1", c.profile.khn1.get_str()}};
  j["threshold"] = c.threshold.get_str();
  j["bound_applicable"] = c.bound_applicable;
  j["surface_smoothness"] = Json{{"verdict", c.surface_smoothness}, {"method", c.surface_smoothness_method}};
  j["hyperplane"] = c.hyperplane ? Json(elems(*c.hyperplane)) : Json(nullptr);
  j["hyperplanes_tried"] = c.hyperplanes_tried;
  j["section"] = c.section;
  j["section_smoothness_method"] = c.section_smoothness_method;
  j["section_genus"] = c.section_genus.get_str();
  j["plane_curve_genus"] = c.plane_curve_genus.get_str();
  j["section_points"] = c.section_points;
  j["hasse_weil"] = c.hasse_weil ? to_json(*c.hasse_weil) : Json(nullptr);
  j["surface_points"] = c.surface_points;
  j["assumptions"] = c.assumptions;
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object() && j.contains("exact") && j["exact"].is_string()) return parse_rational(j["exact"].get<std::string>());
  throw DomainError("expected a rational (integer or \"a/b\" string), got " + j.dump());
}

SparsePolynomial univariate_from_json(const Json& j) {
  if (j.is_string()) return SparsePolynomial::parse(j.get<std::string>(), 1);
  if (j.is_array()) {
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return SparsePolynomial::univariate(c);
  }
  throw DomainError("expected a polynomial string or coefficient list");
}

CurveSetup curve_setup_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("curve description must be a JSON object");
  for (const char* key : {"p", "h", "forms"}) {
    if (!j.contains(key)) throw DomainError(std::string("curve description is missing \"") + key + "\"");
  }
  const PAdicContext ctx(j.at("p").get<int64_t>(), j.value("precision", int64_t{20}));
  HyperellipticCurve curve(ctx, univariate_from_json(j.at("h")));
  std::vector<PluricanonicalForm> forms;
  for (const auto& f : j.at("forms")) {
    forms.push_back(PluricanonicalForm{f.value("m", int64_t{1}), univariate_from_json(f.at("numerator"))});
  }
  return CurveSetup{std::move(curve), std::move(forms)};
}

StepFunction step_function_from_json(const Json& j) {
  const int64_t p = j.at("p").get<int64_t>();
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  StepFunction f(p);
  for (const auto& c : j.at("cosets")) {
    const Json& v = c.at("value");
    PhaseSum value(p);
    if (v.is_object()) {
      value = PhaseSum::complex(p, rational_from_json(v.value("re", Json(0))), rational_from_json(v.value("im", Json(0))));
    } else {
      value = PhaseSum::real(RadicalValue(p, rational_from_json(v)));
    }
    f.add(rational_from_json(c.at("center")), c.at("level").get<int64_t>(), value);
  }
  return f;
}

SparsePolynomial polynomial_from_text(const std::string& text, size_t nvars) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json j = Json::parse(text);
    return SparsePolynomial::parse(j.at("poly").get<std::string>(), j.value("nvars", nvars));
  }
  std::string body = text;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r' || body.back() == ' ')) body.pop_back();
  return SparsePolynomial::parse(body, nvars);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace padiclab
