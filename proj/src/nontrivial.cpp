#include "padiclab/nontrivial.hpp"

namespace padiclab {

NontrivialCertificate verify_nontrivial(const HomogeneousPoly& f, const FqField& k) {
  NontrivialCertificate c;
  c.q = k.q();
  c.degree = f.degree;
  c.assumptions = {"hyperplane sections of a smooth surface are geometrically connected (not re-verified)"};
  auto fail = [&c](std::string stage, std::string detail) {
    c.failed_stage = std::move(stage);
    c.failure_detail = std::move(detail);
    return c;
  };
  if (f.nvars != 4) return fail("input", "expected a surface in P^3 (4 variables)");
  if (f.degree < 1) return fail("input", "degree must be positive");
  const int d = f.degree;
  c.profile = {2, Integer(d), Integer(d) * (d - 4)};
  c.threshold = theorem_threshold(c.profile);
  c.bound_applicable = Integer(c.q) > c.threshold;

  const SmoothnessResult s = is_smooth(f, k);
  c.surface_smoothness = to_string(s.verdict);
  c.surface_smoothness_method = s.method;
  if (s.verdict != Smoothness::kSmooth) return fail("surface-smoothness", "surface is " + c.surface_smoothness);

  const SectionSearch sec = smooth_section_search(f, k);
  c.hyperplanes_tried = sec.tried;
  if (!sec.hyperplane) {
    const bool contradiction = Integer(c.q) > Integer(d) * (d - 1) * (d - 1);
    return fail("section-search", std::string("no certified-smooth hyperplane section") +
                                      (sec.inconclusive > 0 ? " (some sections undecided)" : "") +
                                      (contradiction ? "; q > d(d-1)^2 so one must exist" : ""));
  }
  c.hyperplane = sec.hyperplane;
  c.section = sec.section->to_string(k);
  c.section_smoothness_method = sec.section_smoothness->method;

  c.section_genus = adjunction_genus(c.profile);
  c.plane_curve_genus = Integer(d - 1) * (d - 2) / 2;
  if (c.section_genus != c.plane_curve_genus) return fail("adjunction", "genus disagrees with plane-curve genus");

  c.section_points = count_points(*sec.section, k);
  c.hasse_weil = hasse_weil_check(Integer(c.section_points), c.section_genus, Integer(c.q));
  if (!c.hasse_weil->pass) return fail("hasse-weil", "section count violates the Hasse-Weil bound");

  c.surface_points = count_points(f, k);
  if (c.bound_applicable && c.surface_points == 0) return fail("point-count", "no rational point above the threshold");
  return c;
}

}  // namespace padiclab
