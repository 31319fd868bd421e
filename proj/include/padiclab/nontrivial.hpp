#pragma once

// End-to-end check that a smooth surface in P^3 over F_q has a rational point:
// threshold, smooth hyperplane section, its genus, Hasse-Weil, and the count.

#include "padiclab/bounds.hpp"
#include "padiclab/fq.hpp"

#include <optional>
#include <string>
#include <vector>

namespace padiclab {

struct NontrivialCertificate {
  int64_t q = 0;
  int degree = 0;
  IntersectionProfile profile;
  Integer threshold;
  bool bound_applicable = false;  // q > threshold
  std::string surface_smoothness;
  std::string surface_smoothness_method;
  std::optional<std::vector<FqField::Elem>> hyperplane;
  std::string section;
  std::string section_smoothness_method;
  uint64_t hyperplanes_tried = 0;
  Integer section_genus;
  Integer plane_curve_genus;  // (d-1)(d-2)/2, for cross-checking adjunction
  uint64_t section_points = 0;
  std::optional<HasseWeilCheck> hasse_weil;
  uint64_t surface_points = 0;
  std::vector<std::string> assumptions;
  /// Empty on success; otherwise the stage that failed.
  std::string failed_stage;
  std::string failure_detail;
  bool ok() const { return failed_stage.empty(); }
};

NontrivialCertificate verify_nontrivial(const HomogeneousPoly& f, const FqField& k);

}  // namespace padiclab
