#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "algocert/certify.hpp"
#include "algocert/interp.hpp"
#include "algocert/json_io.hpp"
#include "algocert/quadratic_oracle.hpp"
#include "algocert/simulate.hpp"
#include "algocert/sweeps.hpp"
#include "algocert/version.hpp"

namespace {

using namespace algocert;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoCertificate = 2;

constexpr double kUnsetFlag = std::numeric_limits<double>::quiet_NaN();

bool flag_set(double v) { return !std::isnan(v); }

struct AlgoOptions {
  std::string preset = "GD";
  std::string custom_path;
  std::string tune;
  double alpha = kUnsetFlag;
  double beta = kUnsetFlag;
  double gamma = kUnsetFlag;
};

void add_algorithm_flags(CLI::App* cmd, AlgoOptions& o) {
  auto* preset = cmd->add_option("--preset", o.preset, "algorithm preset: GD, HB, FG, TMM");
  auto* custom =
      cmd->add_option("--custom", o.custom_path, "JSON file with a custom realization");
  preset->excludes(custom);
  cmd->add_option("--tune", o.tune,
                  "tuning rule: quadratic-optimal (default), estimating-sequences (FG), "
                  "manual (requires --alpha/...)")
      ->check(CLI::IsMember({"quadratic-optimal", "estimating-sequences", "manual"}));
  cmd->add_option("--alpha", o.alpha, "stepsize (manual tuning)");
  cmd->add_option("--beta", o.beta, "momentum weight (manual tuning, HB/FG/TMM)");
  cmd->add_option("--gamma", o.gamma, "output momentum weight (manual tuning, TMM)");
}

AlgorithmRealization build_algorithm(const AlgoOptions& o, const FunctionClass& fc) {
  if (!o.custom_path.empty()) {
    return algorithm_from_json(load_json_file(o.custom_path));
  }
  const Preset preset = preset_from_string(o.preset);

  std::string tune = o.tune;
  if (tune.empty()) tune = flag_set(o.alpha) ? "manual" : "quadratic-optimal";

  if (tune == "manual") {
    ParamMap params;
    if (!flag_set(o.alpha)) {
      throw std::invalid_argument("manual tuning requires --alpha");
    }
    params["alpha"] = o.alpha;
    if (flag_set(o.beta)) params["beta"] = o.beta;
    if (flag_set(o.gamma)) params["gamma"] = o.gamma;
    return make_preset(preset, params);
  }
  if (tune == "estimating-sequences") {
    if (preset != Preset::FG) {
      throw std::invalid_argument("estimating-sequences tuning applies to --preset FG only");
    }
    return make_preset(preset, tune_fg_estimating_sequences(fc));
  }
  // quadratic-optimal; TMM uses its reference tuning.
  if (preset == Preset::TMM) return make_preset(preset, tune_tmm(fc));
  return make_preset(preset, tune_quadratic_optimal(preset, fc));
}

struct CommonOptions {
  double m = 1.0;
  double L = 10.0;
  int ell = -1;
  std::string solver = "ipm";
  double tol = 1e-9;
  double bisect_tol = 1e-4;
  double r_min = 0.0;
  double r_max = 1.0;
  std::string out;
};

void add_class_flags(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--m", c.m, "strong convexity modulus")->check(CLI::PositiveNumber);
  cmd->add_option("--L", c.L, "gradient Lipschitz constant")->check(CLI::PositiveNumber);
}

void add_solver_flags(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--ell", c.ell, "memory length (default: 1 for rate, 6 for sensitivity)")
      ->check(CLI::Range(0, 64));
  cmd->add_option("--solver", c.solver, "SDP backend: ipm or projection")
      ->envname("ALGOCERT_SOLVER");
  cmd->add_option("--tol", c.tol, "solver convergence tolerance")
      ->envname("ALGOCERT_TOL")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bisect-tol", c.bisect_tol, "bisection width for the rate search")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--r-min", c.r_min, "lower end of the rate bracket");
  cmd->add_option("--r-max", c.r_max, "rates are only sought below this value");
}

void add_out_flag(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
}

CertifySettings make_settings(const CommonOptions& c) {
  CertifySettings s;
  s.ell = c.ell;
  s.bisect_tol = c.bisect_tol;
  s.r_min = c.r_min;
  s.r_max = c.r_max;
  s.solver.backend = c.solver;
  s.solver.tol = c.tol;
  return s;
}

void emit(const CommonOptions& c, const Json& j) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json_file(c.out, j);
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

int run_certify_rate(const AlgoOptions& ao, const CommonOptions& co,
                     const std::string& dump_lmi, const std::string& dump_lifted) {
  const FunctionClass fc(co.m, co.L);
  const AlgorithmRealization alg = build_algorithm(ao, fc);
  const CertifySettings settings = make_settings(co);
  const RateOutcome outcome = certify_rate(alg, fc, settings);

  const int ell = settings.ell >= 0 ? settings.ell : 1;
  if (!dump_lifted.empty()) {
    save_json_file(dump_lifted, lifted_system_to_json(build_lifted(alg, ell)));
  }
  if (!dump_lmi.empty()) {
    const double r = outcome.certificate ? outcome.certificate->r_upper : co.r_max;
    save_json_file(dump_lmi,
                   lmi_problem_to_json(assemble_rate_lmi(build_lifted(alg, ell), r, fc)));
  }

  if (outcome.certificate) {
    Json j = rate_certificate_to_json(*outcome.certificate);
    j["certified"] = true;
    emit(co, j);
    return kExitOk;
  }
  Json j;
  j["kind"] = "rate";
  j["certified"] = false;
  j["reason"] = outcome.reason;
  j["tool_version"] = kVersion;
  Json hist = Json::array();
  for (const auto& s : outcome.history) {
    hist.push_back(Json{{"r", s.r}, {"feasible", s.feasible}, {"margin", s.margin}});
  }
  j["bisection"] = std::move(hist);
  emit(co, j);
  return kExitNoCertificate;
}

int run_certify_sens(const AlgoOptions& ao, const CommonOptions& co, double sigma, int d,
                     const std::string& dump_lmi, const std::string& dump_lifted) {
  const FunctionClass fc(co.m, co.L);
  const AlgorithmRealization alg = build_algorithm(ao, fc);
  const CertifySettings settings = make_settings(co);
  const SensitivityOutcome outcome = certify_sensitivity(alg, fc, sigma, d, settings);

  const int ell = settings.ell >= 0 ? settings.ell : 6;
  if (!dump_lifted.empty()) {
    save_json_file(dump_lifted, lifted_system_to_json(build_lifted(alg, ell)));
  }
  if (!dump_lmi.empty()) {
    save_json_file(dump_lmi,
                   lmi_problem_to_json(assemble_sensitivity_lmi(build_lifted(alg, ell), fc)));
  }

  if (outcome.certificate) {
    Json j = sensitivity_certificate_to_json(*outcome.certificate);
    j["certified"] = true;
    emit(co, j);
    return kExitOk;
  }
  Json j;
  j["kind"] = "sensitivity";
  j["certified"] = false;
  j["reason"] = outcome.reason;
  j["tool_version"] = kVersion;
  emit(co, j);
  return kExitNoCertificate;
}

int run_oracle_rate(const AlgoOptions& ao, const CommonOptions& co) {
  const FunctionClass fc(co.m, co.L);
  const AlgorithmRealization alg = build_algorithm(ao, fc);
  const double rate = worst_case_rate_quadratic(alg, fc, CurvatureGrid::make(fc));
  Json j;
  j["oracle_rate"] = rate;
  j["algorithm"] = algorithm_to_json(alg);
  j["function_class"] = function_class_to_json(fc);
  emit(co, j);
  return kExitOk;
}

int run_oracle_sens(const AlgoOptions& ao, const CommonOptions& co, double sigma, int d) {
  const FunctionClass fc(co.m, co.L);
  const AlgorithmRealization alg = build_algorithm(ao, fc);
  Json j;
  j["algorithm"] = algorithm_to_json(alg);
  j["function_class"] = function_class_to_json(fc);
  try {
    const double v = quadratic_sensitivity(alg, fc, sigma, d, CurvatureGrid::make(fc));
    j["finite"] = true;
    j["oracle_sensitivity"] = v;
    emit(co, j);
    return kExitOk;
  } catch (const std::domain_error& e) {
    j["finite"] = false;
    j["reason"] = e.what();
    emit(co, j);
    return kExitNoCertificate;
  }
}

int run_interp_check(const std::string& data_path, const CommonOptions& co) {
  const FunctionClass fc(co.m, co.L);
  const Json data = load_json_file(data_path);
  std::vector<InterpPoint> points;
  for (const auto& entry : data) {
    InterpPoint p;
    const Vector y = vector_from_json(entry.at("y"));
    const Vector u = vector_from_json(entry.at("u"));
    p.y = y.transpose();
    p.u = u.transpose();
    p.f = entry.at("f").get<double>();
    points.push_back(std::move(p));
  }
  const InterpCheckResult res = interpolation_check(points, fc);
  Json j;
  j["interpolable"] = res.interpolable;
  j["min_pair_value"] = res.min_qij;
  j["worst_pair"] = Json::array({res.worst_i, res.worst_j});
  emit(co, j);
  return res.interpolable ? kExitOk : kExitNoCertificate;
}

int run_simulate(const AlgoOptions& ao, const CommonOptions& co,
                 std::vector<double> curvatures, std::vector<double> x0, int steps,
                 double sigma, const std::string& dist, std::uint64_t seed,
                 double stop_tol, const std::string& trace_out) {
  const FunctionClass fc(co.m, co.L);
  const AlgorithmRealization alg = build_algorithm(ao, fc);
  if (curvatures.empty()) curvatures = {fc.m, fc.L};
  Vector q(static_cast<int>(curvatures.size()));
  for (int i = 0; i < q.size(); ++i) q(i) = curvatures[i];
  const int d = static_cast<int>(q.size());
  RowVec start = RowVec::Ones(d);
  if (!x0.empty()) {
    if (static_cast<int>(x0.size()) != d) {
      throw std::invalid_argument("--x0 length must match the number of curvatures");
    }
    for (int i = 0; i < d; ++i) start(i) = x0[i];
  }
  const ProblemInstance instance =
      ProblemInstance::quadratic(q, RowVec::Zero(d), fc);

  std::optional<NoiseModel> noise;
  if (sigma > 0.0) {
    NoiseModel nm;
    nm.sigma = sigma;
    nm.seed = seed;
    if (dist == "gaussian") {
      nm.dist = NoiseModel::Dist::gaussian;
    } else if (dist == "uniform") {
      nm.dist = NoiseModel::Dist::uniform;
    } else if (dist == "rademacher") {
      nm.dist = NoiseModel::Dist::rademacher;
    } else {
      throw std::invalid_argument("unknown noise distribution: " + dist);
    }
    noise = nm;
  }

  const SimulationTrace trace = run(alg, instance, start, steps, noise, stop_tol);
  if (!trace_out.empty()) {
    std::ofstream os(trace_out);
    if (!os) throw std::runtime_error("cannot write " + trace_out);
    const int dout = trace.outputs.empty() ? 0 : static_cast<int>(trace.outputs[0].size());
    os << "k,state_err,iterate_err,value_gap";
    for (int c = 0; c < dout; ++c) os << ",y" << c;
    os << '\n';
    os.precision(12);
    for (size_t k = 0; k < trace.state_err.size(); ++k) {
      os << k << ',' << trace.state_err[k] << ',' << trace.iterate_err[k] << ',';
      if (k < trace.values.size()) os << trace.values[k];
      for (int c = 0; c < dout; ++c) {
        os << ',';
        if (k < trace.outputs.size()) os << trace.outputs[k](c);
      }
      os << '\n';
    }
  }
  Json j;
  j["steps_to_tol"] = trace.steps_to_tol;
  j["empirical_rate"] = trace.empirical_rate;
  j["diverged"] = trace.diverged;
  j["time_avg_sq_output_err"] = trace.time_avg_sq_output_err;
  if (!trace.state_err.empty()) {
    j["final_state_err"] = trace.state_err.back();
    j["final_iterate_err"] = trace.iterate_err.back();
  }
  emit(co, j);
  return kExitOk;
}

int run_sweep_rate(const std::string& config_path, std::vector<double> kappas,
                   std::vector<std::string> algorithms, CommonOptions co, int jobs,
                   const std::string& gnuplot_path) {
  RateSweepConfig cfg;
  if (!config_path.empty()) {
    const Json j = load_json_file(config_path);
    if (j.value("schema_version", 0) != 1) {
      throw std::invalid_argument("sweep config: unsupported or missing schema_version");
    }
    cfg.kappas = j.at("kappas").get<std::vector<double>>();
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    cfg.ell = j.value("ell", 1);
    cfg.bisect_tol = j.value("bisect_tol", 1e-4);
    if (j.contains("solver")) cfg.solver.backend = j.at("solver").get<std::string>();
    if (j.contains("tol")) cfg.solver.tol = j.at("tol").get<double>();
  } else {
    cfg.kappas = kappas.empty() ? std::vector<double>{2, 5, 10, 25, 50, 100, 250, 1000}
                                : kappas;
    cfg.algorithms = algorithms.empty()
                         ? std::vector<std::string>{"gd", "hb", "fg", "fgstar", "tmm"}
                         : algorithms;
    cfg.ell = co.ell >= 0 ? co.ell : 1;
    cfg.bisect_tol = co.bisect_tol;
    cfg.solver.backend = co.solver;
    cfg.solver.tol = co.tol;
  }
  cfg.jobs = jobs;

  const std::vector<RateSweepRow> rows = run_rate_sweep(cfg);
  if (co.out.empty()) {
    write_rate_sweep_csv(std::cout, rows);
  } else {
    std::ofstream os(co.out);
    if (!os) throw std::runtime_error("cannot write " + co.out);
    write_rate_sweep_csv(os, rows);
  }
  if (!gnuplot_path.empty()) {
    write_text_file(gnuplot_path,
                    rate_sweep_gnuplot_script(co.out.empty() ? "sweep.csv" : co.out));
  }
  return kExitOk;
}

int run_tradeoff(CommonOptions co, int grid, double sigma, int d, bool gd_only, int jobs,
                 const std::string& gnuplot_path) {
  TradeoffConfig cfg;
  cfg.fc = FunctionClass(co.m, co.L);
  if (co.ell >= 0) {
    cfg.ell_rate = co.ell;
    cfg.ell_sens = co.ell;
  }
  cfg.gd_grid = grid;
  cfg.include_presets = !gd_only;
  cfg.sigma = sigma;
  cfg.d = d;
  cfg.bisect_tol = co.bisect_tol;
  cfg.solver.backend = co.solver;
  cfg.solver.tol = co.tol;
  cfg.jobs = jobs;

  const std::vector<TradeoffRow> rows = run_tradeoff_sweep(cfg);
  if (co.out.empty()) {
    write_tradeoff_csv(std::cout, rows);
  } else {
    std::ofstream os(co.out);
    if (!os) throw std::runtime_error("cannot write " + co.out);
    write_tradeoff_csv(os, rows);
  }
  if (!gnuplot_path.empty()) {
    write_text_file(gnuplot_path,
                    tradeoff_gnuplot_script(co.out.empty() ? "tradeoff.csv" : co.out));
  }
  return kExitOk;
}

int run_fig1(const CommonOptions& co, const std::string& trace_out) {
  const std::vector<Fig1Row> rows = fig1_experiment();
  if (!trace_out.empty()) {
    std::ofstream os(trace_out);
    if (!os) throw std::runtime_error("cannot write " + trace_out);
    os << "algorithm,k,iterate_err\n";
    os.precision(12);
    for (const auto& row : rows) {
      for (size_t k = 0; k < row.trace.iterate_err.size(); ++k) {
        os << row.algorithm << ',' << k << ',' << row.trace.iterate_err[k] << '\n';
      }
    }
  }
  Json j;
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json entry;
    entry["algorithm"] = row.algorithm;
    entry["steps"] = row.steps;
    Json params = Json::object();
    for (const auto& [k, v] : row.params) params[k] = v;
    entry["params"] = std::move(params);
    arr.push_back(std::move(entry));
  }
  j["rows"] = std::move(arr);
  emit(co, j);
  return kExitOk;
}

int run_replay(const std::string& cert_path, const CommonOptions& co) {
  const Json j = load_json_file(cert_path);
  const std::string kind = j.value("kind", "");
  const double pass_tol = 1e-6;

  Json out;
  out["kind"] = kind;
  ResidualReport report;
  double bound_drift = 0.0;
  if (kind == "rate") {
    const RateCertificate cert = rate_certificate_from_json(j);
    report = replay_rate_certificate(cert);
  } else if (kind == "sensitivity") {
    const SensitivityCertificate cert = sensitivity_certificate_from_json(j);
    report = replay_sensitivity_certificate(cert);
    const double recomputed =
        sensitivity_bound_from_vars(cert.alg, cert.ell, cert.vars, cert.sigma, cert.d);
    bound_drift = std::abs(recomputed - cert.gamma);
    out["gamma_recomputed"] = recomputed;
    out["gamma_stored"] = cert.gamma;
  } else {
    throw std::invalid_argument("certificate has unknown kind: " + kind);
  }

  double stored_drift = 0.0;
  if (j.contains("residuals")) {
    const Json& stored = j.at("residuals");
    stored_drift = std::max(
        std::abs(stored.value("max_matrix", 0.0) - report.max_matrix_residual),
        std::abs(stored.value("max_vector", 0.0) - report.max_vector_residual));
  }
  const bool pass = report.pass(pass_tol) && bound_drift <= 1e-9 && stored_drift <= 1e-12;
  out["pass"] = pass;
  out["max_matrix_residual"] = report.max_matrix_residual;
  out["max_vector_residual"] = report.max_vector_residual;
  out["min_multiplier_entry"] = report.min_lambda_entry;
  out["stored_residual_drift"] = stored_drift;
  emit(co, out);
  return pass ? kExitOk : kExitNoCertificate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify worst-case convergence rates and gradient-noise sensitivity "
               "of first-order methods over strongly convex function classes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int exit_code = kExitOk;

  // certify-rate
  auto ao_rate = std::make_shared<AlgoOptions>();
  auto co_rate = std::make_shared<CommonOptions>();
  auto dump_lmi_rate = std::make_shared<std::string>();
  auto dump_lifted_rate = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "certify-rate", "bisection search for the smallest certifiable contraction factor");
    add_algorithm_flags(cmd, *ao_rate);
    add_class_flags(cmd, *co_rate);
    add_solver_flags(cmd, *co_rate);
    add_out_flag(cmd, *co_rate);
    cmd->add_option("--dump-lmi", *dump_lmi_rate, "write the assembled system to a JSON file");
    cmd->add_option("--dump-lifted", *dump_lifted_rate,
                    "write the lifted realization to a JSON file");
    cmd->callback([&, ao_rate, co_rate, dump_lmi_rate, dump_lifted_rate]() {
      exit_code = run_certify_rate(*ao_rate, *co_rate, *dump_lmi_rate, *dump_lifted_rate);
    });
  }

  // certify-sens
  auto ao_sens = std::make_shared<AlgoOptions>();
  auto co_sens = std::make_shared<CommonOptions>();
  auto sigma_sens = std::make_shared<double>(1.0);
  auto d_sens = std::make_shared<int>(1);
  auto dump_lmi_sens = std::make_shared<std::string>();
  auto dump_lifted_sens = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "certify-sens", "minimize the certified bound on long-run output error under "
                        "additive gradient noise");
    add_algorithm_flags(cmd, *ao_sens);
    add_class_flags(cmd, *co_sens);
    add_solver_flags(cmd, *co_sens);
    add_out_flag(cmd, *co_sens);
    cmd->add_option("--sigma", *sigma_sens, "noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--d", *d_sens, "problem dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--dump-lmi", *dump_lmi_sens, "write the assembled system to a JSON file");
    cmd->add_option("--dump-lifted", *dump_lifted_sens,
                    "write the lifted realization to a JSON file");
    cmd->callback([&, ao_sens, co_sens, sigma_sens, d_sens, dump_lmi_sens, dump_lifted_sens]() {
      exit_code = run_certify_sens(*ao_sens, *co_sens, *sigma_sens, *d_sens, *dump_lmi_sens,
                                   *dump_lifted_sens);
    });
  }

  // oracle-rate
  auto ao_orate = std::make_shared<AlgoOptions>();
  auto co_orate = std::make_shared<CommonOptions>();
  {
    CLI::App* cmd = app.add_subcommand(
        "oracle-rate", "exact worst-case rate over the quadratic subclass");
    add_algorithm_flags(cmd, *ao_orate);
    add_class_flags(cmd, *co_orate);
    add_out_flag(cmd, *co_orate);
    cmd->callback([&, ao_orate, co_orate]() { exit_code = run_oracle_rate(*ao_orate, *co_orate); });
  }

  // oracle-sens
  auto ao_osens = std::make_shared<AlgoOptions>();
  auto co_osens = std::make_shared<CommonOptions>();
  auto sigma_osens = std::make_shared<double>(1.0);
  auto d_osens = std::make_shared<int>(1);
  {
    CLI::App* cmd = app.add_subcommand(
        "oracle-sens", "exact steady-state noise sensitivity over the quadratic subclass");
    add_algorithm_flags(cmd, *ao_osens);
    add_class_flags(cmd, *co_osens);
    add_out_flag(cmd, *co_osens);
    cmd->add_option("--sigma", *sigma_osens, "noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--d", *d_osens, "problem dimension")->check(CLI::PositiveNumber);
    cmd->callback([&, ao_osens, co_osens, sigma_osens, d_osens]() {
      exit_code = run_oracle_sens(*ao_osens, *co_osens, *sigma_osens, *d_osens);
    });
  }

  // interp-check
  auto data_interp = std::make_shared<std::string>();
  auto co_interp = std::make_shared<CommonOptions>();
  {
    CLI::App* cmd = app.add_subcommand(
        "interp-check", "test a (point, gradient, value) data set against the class "
                        "interpolation conditions");
    cmd->add_option("--data", *data_interp, "JSON array of {y, u, f} records")->required();
    add_class_flags(cmd, *co_interp);
    add_out_flag(cmd, *co_interp);
    cmd->callback([&, data_interp, co_interp]() {
      exit_code = run_interp_check(*data_interp, *co_interp);
    });
  }

  // simulate
  auto ao_sim = std::make_shared<AlgoOptions>();
  auto co_sim = std::make_shared<CommonOptions>();
  auto curv_sim = std::make_shared<std::vector<double>>();
  auto x0_sim = std::make_shared<std::vector<double>>();
  auto steps_sim = std::make_shared<int>(200);
  auto sigma_sim = std::make_shared<double>(0.0);
  auto dist_sim = std::make_shared<std::string>("gaussian");
  auto seed_sim = std::make_shared<std::uint64_t>(0);
  auto stop_tol_sim = std::make_shared<double>(1e-6);
  auto trace_sim = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "simulate", "run the closed loop on a diagonal quadratic instance");
    add_algorithm_flags(cmd, *ao_sim);
    add_class_flags(cmd, *co_sim);
    add_out_flag(cmd, *co_sim);
    cmd->add_option("--curvatures", *curv_sim,
                    "Hessian eigenvalues of the instance (default: m,L)")
        ->delimiter(',');
    cmd->add_option("--x0", *x0_sim, "starting iterate (default: all ones)")->delimiter(',');
    cmd->add_option("--steps", *steps_sim, "iteration budget")->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", *sigma_sim, "gradient noise standard deviation (0 = none)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--dist", *dist_sim, "noise law: gaussian, uniform, rademacher");
    cmd->add_option("--seed", *seed_sim, "noise seed")->envname("ALGOCERT_SEED");
    cmd->add_option("--stop-tol", *stop_tol_sim, "iterate-error threshold for steps_to_tol");
    cmd->add_option("--trace-out", *trace_sim, "write the per-step trace CSV here");
    cmd->callback([&, ao_sim, co_sim, curv_sim, x0_sim, steps_sim, sigma_sim, dist_sim,
                   seed_sim, stop_tol_sim, trace_sim]() {
      exit_code = run_simulate(*ao_sim, *co_sim, *curv_sim, *x0_sim, *steps_sim, *sigma_sim,
                               *dist_sim, *seed_sim, *stop_tol_sim, *trace_sim);
    });
  }

  // sweep-rate
  auto config_sweep = std::make_shared<std::string>();
  auto kappas_sweep = std::make_shared<std::vector<double>>();
  auto algos_sweep = std::make_shared<std::vector<std::string>>();
  auto co_sweep = std::make_shared<CommonOptions>();
  auto jobs_sweep = std::make_shared<int>(1);
  auto gnuplot_sweep = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "sweep-rate", "certified/oracle/analytic rates across a condition-number grid (CSV)");
    cmd->add_option("--config", *config_sweep,
                    "JSON sweep config with schema_version, kappas, algorithms");
    cmd->add_option("--kappas", *kappas_sweep, "condition numbers")->delimiter(',');
    cmd->add_option("--algorithms", *algos_sweep,
                    "named combinations: gd, hb, fg, fgstar, tmm")
        ->delimiter(',');
    add_solver_flags(cmd, *co_sweep);
    add_out_flag(cmd, *co_sweep);
    cmd->add_option("--jobs", *jobs_sweep, "worker threads")
        ->envname("ALGOCERT_JOBS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gnuplot", *gnuplot_sweep, "also write a plotting script here");
    cmd->callback([&, config_sweep, kappas_sweep, algos_sweep, co_sweep, jobs_sweep,
                   gnuplot_sweep]() {
      exit_code = run_sweep_rate(*config_sweep, *kappas_sweep, *algos_sweep, *co_sweep,
                                 *jobs_sweep, *gnuplot_sweep);
    });
  }

  // tradeoff
  auto co_tr = std::make_shared<CommonOptions>();
  auto grid_tr = std::make_shared<int>(24);
  auto sigma_tr = std::make_shared<double>(1.0);
  auto d_tr = std::make_shared<int>(1);
  auto gd_only_tr = std::make_shared<bool>(false);
  auto jobs_tr = std::make_shared<int>(1);
  auto gnuplot_tr = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "tradeoff", "rate vs noise-sensitivity sweep over tunings (CSV)");
    co_tr->m = 1.0;
    co_tr->L = 8.0;
    add_class_flags(cmd, *co_tr);
    add_solver_flags(cmd, *co_tr);
    add_out_flag(cmd, *co_tr);
    cmd->add_option("--grid", *grid_tr, "number of gradient-descent stepsizes in (0, 2/L]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", *sigma_tr, "noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--d", *d_tr, "problem dimension")->check(CLI::PositiveNumber);
    cmd->add_flag("--gd-only", *gd_only_tr, "skip the preset points");
    cmd->add_option("--jobs", *jobs_tr, "worker threads")
        ->envname("ALGOCERT_JOBS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gnuplot", *gnuplot_tr, "also write a plotting script here");
    cmd->callback([&, co_tr, grid_tr, sigma_tr, d_tr, gd_only_tr, jobs_tr, gnuplot_tr]() {
      exit_code = run_tradeoff(*co_tr, *grid_tr, *sigma_tr, *d_tr, *gd_only_tr, *jobs_tr,
                               *gnuplot_tr);
    });
  }

  // fig1
  auto co_fig1 = std::make_shared<CommonOptions>();
  auto trace_fig1 = std::make_shared<std::string>();
  {
    CLI::App* cmd = app.add_subcommand(
        "fig1", "two-dimensional quadratic benchmark: steps-to-tolerance per preset");
    add_out_flag(cmd, *co_fig1);
    cmd->add_option("--trace-out", *trace_fig1, "write per-step traces CSV here");
    cmd->callback([&, co_fig1, trace_fig1]() { exit_code = run_fig1(*co_fig1, *trace_fig1); });
  }

  // replay
  auto cert_replay = std::make_shared<std::string>();
  auto co_replay = std::make_shared<CommonOptions>();
  {
    CLI::App* cmd = app.add_subcommand(
        "replay", "re-assemble a stored certificate's constraints and verify it");
    cmd->add_option("--cert", *cert_replay, "certificate JSON file")->required();
    add_out_flag(cmd, *co_replay);
    cmd->callback([&, cert_replay, co_replay]() {
      exit_code = run_replay(*cert_replay, *co_replay);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
