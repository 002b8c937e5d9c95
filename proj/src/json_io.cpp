#include "algocert/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include "algocert/version.hpp"

namespace algocert {

Json matrix_to_json(const Matrix& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix json must be an array of rows");
  const int nr = static_cast<int>(j.size());
  if (nr == 0) return Matrix(0, 0);
  const int nc = static_cast<int>(j.at(0).size());
  Matrix M(nr, nc);
  for (int i = 0; i < nr; ++i) {
    const Json& row = j.at(i);
    if (static_cast<int>(row.size()) != nc) {
      throw std::invalid_argument("matrix json rows have inconsistent lengths");
    }
    for (int c = 0; c < nc; ++c) M(i, c) = row.at(c).get<double>();
  }
  return M;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector json must be an array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

Json algorithm_to_json(const AlgorithmRealization& alg) {
  Json j;
  const bool preset_like =
      alg.label == "GD" || alg.label == "HB" || alg.label == "FG" || alg.label == "TMM";
  if (preset_like) {
    j["preset"] = alg.label;
    Json params = Json::object();
    for (const auto& [k, v] : alg.params) params[k] = v;
    j["params"] = std::move(params);
  } else {
    Json c;
    c["A"] = matrix_to_json(alg.A);
    c["B"] = matrix_to_json(alg.B);
    c["C"] = matrix_to_json(alg.C);
    c["fixed_point_direction"] = vector_to_json(alg.fixed_point_direction);
    c["label"] = alg.label;
    j["custom"] = std::move(c);
  }
  return j;
}

AlgorithmRealization algorithm_from_json(const Json& j) {
  if (j.contains("preset")) {
    ParamMap params;
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
    }
    return make_preset(preset_from_string(j.at("preset").get<std::string>()), params);
  }
  if (j.contains("custom")) {
    const Json& c = j.at("custom");
    AlgorithmRealization alg =
        make_custom(matrix_from_json(c.at("A")), matrix_from_json(c.at("B")),
                    matrix_from_json(c.at("C")),
                    vector_from_json(c.at("fixed_point_direction")));
    if (c.contains("label")) alg.label = c.at("label").get<std::string>();
    return alg;
  }
  throw std::invalid_argument("algorithm json needs a \"preset\" or \"custom\" entry");
}

Json function_class_to_json(const FunctionClass& fc) {
  return Json{{"m", fc.m}, {"L", fc.L}};
}

FunctionClass function_class_from_json(const Json& j) {
  return FunctionClass(j.at("m").get<double>(), j.at("L").get<double>());
}

Json variables_to_json(const LmiVariables& vars) {
  Json j;
  j["P"] = matrix_to_json(vars.P);
  j["p"] = vector_to_json(vars.p);
  j["Lambda1"] = matrix_to_json(vars.Lambda1);
  j["Lambda2"] = matrix_to_json(vars.Lambda2);
  return j;
}

LmiVariables variables_from_json(const Json& j) {
  LmiVariables vars;
  vars.P = matrix_from_json(j.at("P"));
  vars.p = vector_from_json(j.at("p"));
  vars.Lambda1 = matrix_from_json(j.at("Lambda1"));
  vars.Lambda2 = matrix_from_json(j.at("Lambda2"));
  return vars;
}

Json residuals_to_json(const ResidualReport& report) {
  Json j;
  Json mats = Json::array();
  for (const auto& cr : report.matrix_residuals) {
    mats.push_back(Json{{"name", cr.name}, {"value", cr.value}});
  }
  Json vecs = Json::array();
  for (const auto& cr : report.vector_residuals) {
    vecs.push_back(Json{{"name", cr.name}, {"value", cr.value}});
  }
  j["matrix"] = std::move(mats);
  j["vector"] = std::move(vecs);
  j["max_matrix"] = report.max_matrix_residual;
  j["max_vector"] = report.max_vector_residual;
  j["min_lambda"] = report.min_lambda_entry;
  return j;
}

Json lmi_problem_to_json(const LmiProblem& problem) {
  Json j;
  j["layout"] = Json{{"state_dim", problem.layout.state_dim},
                     {"p_len", problem.layout.p_len},
                     {"lambda_dim", problem.layout.lambda_dim},
                     {"num_vars", problem.layout.num_vars()}};
  Json mats = Json::array();
  for (const auto& mc : problem.matrix_constraints) {
    Json entry;
    entry["name"] = mc.name;
    entry["sense"] = "<=0 (semidefinite)";
    entry["constant"] = matrix_to_json(mc.constant);
    Json coeffs = Json::array();
    for (const auto& A : mc.coeff) coeffs.push_back(matrix_to_json(A));
    entry["coeff"] = std::move(coeffs);
    mats.push_back(std::move(entry));
  }
  j["matrix_constraints"] = std::move(mats);
  Json vecs = Json::array();
  for (const auto& vc : problem.vector_constraints) {
    Json entry;
    entry["name"] = vc.name;
    entry["sense"] = "<=0 (elementwise)";
    entry["constant"] = vector_to_json(vc.constant);
    entry["coeff"] = matrix_to_json(vc.coeff);
    vecs.push_back(std::move(entry));
  }
  j["vector_constraints"] = std::move(vecs);
  if (problem.objective.size() > 0) j["objective"] = vector_to_json(problem.objective);
  return j;
}

Json lifted_system_to_json(const LiftedSystem& ls) {
  Json j;
  j["ell"] = ls.ell;
  j["n"] = ls.n;
  j["A"] = matrix_to_json(ls.A);
  j["B"] = matrix_to_json(ls.B);
  j["H"] = matrix_to_json(ls.H);
  j["C"] = matrix_to_json(ls.C);
  j["D"] = matrix_to_json(ls.D);
  j["state_proj"] = matrix_to_json(ls.state_proj);
  j["output_proj"] = matrix_to_json(ls.output_proj);
  j["input_proj"] = matrix_to_json(ls.input_proj);
  return j;
}

Json rate_certificate_to_json(const RateCertificate& cert) {
  Json j;
  j["kind"] = "rate";
  j["tool_version"] = kVersion;
  j["algorithm"] = algorithm_to_json(cert.alg);
  j["function_class"] = function_class_to_json(cert.fc);
  j["ell"] = cert.ell;
  j["r_upper"] = cert.r_upper;
  j["bisect_tol"] = cert.bisect_tol;
  j["variables"] = variables_to_json(cert.vars);
  Json hist = Json::array();
  for (const auto& step : cert.history) {
    hist.push_back(Json{{"r", step.r}, {"feasible", step.feasible}, {"margin", step.margin}});
  }
  j["bisection"] = std::move(hist);
  j["residuals"] = residuals_to_json(replay_rate_certificate(cert));
  return j;
}

RateCertificate rate_certificate_from_json(const Json& j) {
  if (j.value("kind", "") != "rate") {
    throw std::invalid_argument("not a rate certificate");
  }
  RateCertificate cert;
  cert.alg = algorithm_from_json(j.at("algorithm"));
  cert.fc = function_class_from_json(j.at("function_class"));
  cert.ell = j.at("ell").get<int>();
  cert.r_upper = j.at("r_upper").get<double>();
  cert.bisect_tol = j.value("bisect_tol", 1e-4);
  cert.vars = variables_from_json(j.at("variables"));
  if (j.contains("bisection")) {
    for (const auto& step : j.at("bisection")) {
      cert.history.push_back({step.at("r").get<double>(), step.at("feasible").get<bool>(),
                              step.value("margin", 0.0)});
    }
  }
  return cert;
}

Json sensitivity_certificate_to_json(const SensitivityCertificate& cert) {
  Json j;
  j["kind"] = "sensitivity";
  j["tool_version"] = kVersion;
  j["algorithm"] = algorithm_to_json(cert.alg);
  j["function_class"] = function_class_to_json(cert.fc);
  j["ell"] = cert.ell;
  j["sigma"] = cert.sigma;
  j["d"] = cert.d;
  j["noise_energy"] = cert.noise_energy;
  j["gamma"] = cert.gamma;
  j["variables"] = variables_to_json(cert.vars);
  j["residuals"] = residuals_to_json(replay_sensitivity_certificate(cert));
  return j;
}

SensitivityCertificate sensitivity_certificate_from_json(const Json& j) {
  if (j.value("kind", "") != "sensitivity") {
    throw std::invalid_argument("not a sensitivity certificate");
  }
  SensitivityCertificate cert;
  cert.alg = algorithm_from_json(j.at("algorithm"));
  cert.fc = function_class_from_json(j.at("function_class"));
  cert.ell = j.at("ell").get<int>();
  cert.sigma = j.at("sigma").get<double>();
  cert.d = j.at("d").get<int>();
  cert.noise_energy = j.at("noise_energy").get<double>();
  cert.gamma = j.at("gamma").get<double>();
  cert.vars = variables_from_json(j.at("variables"));
  return cert;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace algocert
