#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "pickpoly/bernstein.hpp"
#include "pickpoly/full_model.hpp"
#include "pickpoly/inference.hpp"
#include "pickpoly/measures.hpp"
#include "pickpoly/pickands.hpp"
#include "pickpoly/simulation.hpp"
#include "pickpoly/submodel.hpp"

namespace pickpoly {

using json = nlohmann::json;

/// A JSON number, or a string holding a decimal or a fraction "p/q".
double real_from_json(const json& j);

/// {"basis": "bernstein"|"power", "degree": m, "coeffs": [...]}. "degree" is
/// optional and defaults to the natural degree; it elevates power input.
BernsteinPoly poly_from_json(const json& j);
json bernstein_to_json(const BernsteinPoly& p);
json power_to_json(const PowerPoly& p);
/// {"bernstein": {...}, "power": {...}}
json poly_both_bases(const BernsteinPoly& p);

/// {"m": m, "theta": [...]}
FullModelParam theta_from_json(const json& j);
/// {"m": m, "c": [...]}; "m" is optional and must match the length.
SubmodelParam submodel_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const MembershipReport& r);
json to_json(const LorentzResult& r);
json to_json(const DependenceReport& r);
json to_json(const ApproxErrorReport& r);
json to_json(const FitResult& r);
json to_json(const StudyConfig& c);
/// Deterministic content only; the runtime is left out.
json to_json(const StudyReport& r);

/// {"model": "asymmetric_logistic", "alpha", "psi1", "psi2"},
/// {"model": "symmetric_mixed", "psi"}, {"model": "polynomial", "poly": {...}}.
ReferenceModel model_from_json(const json& j);
json model_to_json(const ReferenceModel& model);
/// Reference models plus {"model": "comonotone"} and {"model": "independence"}.
GenericPickands pickands_from_model_json(const json& j);

/// Missing keys take the StudyConfig defaults; "model" is required.
StudyConfig study_config_from_json(const json& j);

/// Columns estimator,t,truth,mean,mse,variance,bias2.
void write_study_csv(const StudyReport& r, std::ostream& out);

/// Parses text as JSON, mapping parse failures to InputError.
json parse_json(const std::string& text);

}  // namespace pickpoly
