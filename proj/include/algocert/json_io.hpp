#pragma once

#include <string>

#include "json.hpp"

#include "algocert/algorithm.hpp"
#include "algocert/certify.hpp"
#include "algocert/lifting.hpp"

namespace algocert {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Algorithm descriptions accept either form:
///   {"preset": "gd"|"hb"|"fg"|"tmm", "params": {"alpha": ..., ...}}
///   {"custom": {"A": [[...]], "B": [[...]], "C": [[...]],
///               "fixed_point_direction": [...], "label": "..."}}
Json algorithm_to_json(const AlgorithmRealization& alg);
AlgorithmRealization algorithm_from_json(const Json& j);

Json function_class_to_json(const FunctionClass& fc);
FunctionClass function_class_from_json(const Json& j);

Json variables_to_json(const LmiVariables& vars);
LmiVariables variables_from_json(const Json& j);

Json residuals_to_json(const ResidualReport& report);

/// Debug dump of an assembled constraint system: every constraint with its
/// constant and dense per-variable coefficients, for cross-checking against
/// independent tooling.
Json lmi_problem_to_json(const LmiProblem& problem);

Json lifted_system_to_json(const LiftedSystem& ls);

Json rate_certificate_to_json(const RateCertificate& cert);
RateCertificate rate_certificate_from_json(const Json& j);

Json sensitivity_certificate_to_json(const SensitivityCertificate& cert);
SensitivityCertificate sensitivity_certificate_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace algocert
