#pragma once

// JSON input formats and result serialization shared by the CLI, the corpus
// runner and the Python module.

#include "padiclab/equimeasure.hpp"
#include "padiclab/nontrivial.hpp"
#include "padiclab/witness.hpp"

#include <json.hpp>

#include <string>

namespace padiclab {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& x);
Json to_json(const RadicalValue& x);
Json to_json(const IntegralResult& r);
Json to_json(const MassEnclosure& m);
Json to_json(const StepMeasure& m);
Json to_json(const IsometryReport& r);
Json to_json(const CompareReport& r);
Json to_json(const PhaseSum& s);
Json to_json(const StepFunction& f);
Json to_json(const WitnessFunction& w);
Json to_json(const WitnessReport& r);
Json to_json(const NonvanishReport& r);
Json to_json(const SmoothnessResult& s);
Json to_json(const HasseWeilCheck& h);
Json to_json(const NontrivialCertificate& c);

/// A rational from a JSON number or string "a/b".
Rational rational_from_json(const Json& j);

/// Univariate polynomial from a string or a coefficient list (lowest degree first).
SparsePolynomial univariate_from_json(const Json& j);

/// Curve description: {"p", "precision", "h", "forms": [{"m", "numerator"}]}.
CurveSetup curve_setup_from_json(const Json& j);

/// Step function: {"p", "cosets": [{"center", "level", "value"}]}, value a
/// rational or {"re", "im"}.
StepFunction step_function_from_json(const Json& j);

/// Polynomial file: a JSON object {"poly": text, "nvars": n} or bare polynomial text.
SparsePolynomial polynomial_from_text(const std::string& text, size_t nvars = 1);

std::string read_file(const std::string& path);

}  // namespace padiclab
