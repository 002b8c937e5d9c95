#include "algocert/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "algocert/quadratic_oracle.hpp"

namespace algocert {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string sanitize_csv_field(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n') c = ';';
  }
  return s;
}

// Run tasks 0..n-1 on a small pool; results land at their own index, so the
// output order never depends on scheduling.
void parallel_for(int n, int jobs, const std::function<void(int)>& task) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

AlgorithmRealization named_algorithm(const std::string& name, const FunctionClass& fc) {
  if (name == "gd") return make_preset(Preset::GD, tune_quadratic_optimal(Preset::GD, fc));
  if (name == "hb") return make_preset(Preset::HB, tune_quadratic_optimal(Preset::HB, fc));
  if (name == "fg") return make_preset(Preset::FG, tune_quadratic_optimal(Preset::FG, fc));
  if (name == "fgstar") return make_preset(Preset::FG, tune_fg_estimating_sequences(fc));
  if (name == "tmm") return make_preset(Preset::TMM, tune_tmm(fc));
  throw std::invalid_argument("unknown algorithm name: " + name);
}

double analytic_rate(const std::string& name, const FunctionClass& fc) {
  if (name == "gd") return quadratic_rate_formula(RateFormula::GD, fc);
  if (name == "hb") return quadratic_rate_formula(RateFormula::HB, fc);
  if (name == "fg") return quadratic_rate_formula(RateFormula::FG, fc);
  if (name == "fgstar") return quadratic_rate_formula(RateFormula::FGstar, fc);
  if (name == "tmm") return tmm_reference_rate(fc);
  return kNaN;
}

std::vector<RateSweepRow> run_rate_sweep(const RateSweepConfig& config) {
  if (config.kappas.empty()) throw std::invalid_argument("rate sweep: empty kappa grid");
  if (config.algorithms.empty()) throw std::invalid_argument("rate sweep: no algorithms");
  for (double k : config.kappas) {
    if (!(k >= 1.0)) throw std::invalid_argument("rate sweep: kappa must be >= 1");
  }

  struct Task {
    double kappa;
    std::string name;
  };
  std::vector<Task> tasks;
  for (double k : config.kappas) {
    for (const auto& name : config.algorithms) tasks.push_back({k, name});
  }

  std::vector<RateSweepRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), config.jobs, [&](int i) {
    const Task& t = tasks[i];
    RateSweepRow& row = rows[i];
    row.kappa = t.kappa;
    row.algorithm = t.name;
    row.certified_rate = 1.0;
    row.oracle_rate = kNaN;
    row.analytic_rate = kNaN;
    try {
      const FunctionClass fc = FunctionClass::from_kappa(t.kappa);
      const AlgorithmRealization alg = named_algorithm(t.name, fc);
      row.analytic_rate = analytic_rate(t.name, fc);
      row.oracle_rate = worst_case_rate_quadratic(alg, fc, CurvatureGrid::make(fc));

      CertifySettings cs;
      cs.ell = config.ell;
      cs.bisect_tol = config.bisect_tol;
      cs.solver = config.solver;
      const RateOutcome out = certify_rate(alg, fc, cs);
      if (out.certificate) {
        row.certified_rate = out.certificate->r_upper;
        row.flag = "certified";
      } else {
        row.certified_rate = 1.0;
        row.flag = "no-certificate";
      }
    } catch (const std::exception& e) {
      row.flag = "error: " + sanitize_csv_field(e.what());
    }
  });
  return rows;
}

void write_rate_sweep_csv(std::ostream& os, const std::vector<RateSweepRow>& rows) {
  os << "kappa,algorithm,certified_rate,oracle_rate,analytic_rate,flag\n";
  for (const auto& r : rows) {
    os << format_double(r.kappa) << ',' << r.algorithm << ','
       << format_double(r.certified_rate) << ',' << format_double(r.oracle_rate) << ','
       << format_double(r.analytic_rate) << ',' << r.flag << '\n';
  }
}

std::vector<TradeoffRow> run_tradeoff_sweep(const TradeoffConfig& config) {
  if (config.gd_grid < 1) throw std::invalid_argument("tradeoff sweep: empty alpha grid");

  struct Task {
    std::string algorithm;
    std::string tuning;
    ParamMap params;  // used with the named preset
    bool named = false;
    std::string name;  // for named presets
  };
  std::vector<Task> tasks;
  const double alpha_hi = 2.0 / config.fc.L;
  for (int i = 1; i <= config.gd_grid; ++i) {
    const double alpha = alpha_hi * static_cast<double>(i) / config.gd_grid;
    Task t;
    t.algorithm = "gd";
    std::ostringstream os;
    os.precision(10);
    os << "alpha=" << alpha;
    t.tuning = os.str();
    t.params = {{"alpha", alpha}};
    tasks.push_back(std::move(t));
  }
  if (config.include_presets) {
    for (const char* name : {"gd", "hb", "fg", "fgstar", "tmm"}) {
      Task t;
      t.named = true;
      t.name = name;
      t.algorithm = name;
      t.tuning = (std::string(name) == "fgstar") ? "estimating-sequences"
                                                 : "quadratic-optimal";
      tasks.push_back(std::move(t));
    }
  }

  std::vector<TradeoffRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), config.jobs, [&](int i) {
    const Task& t = tasks[i];
    TradeoffRow& row = rows[i];
    row.algorithm = t.algorithm;
    row.tuning = t.tuning;
    row.certified_rate = 1.0;
    row.certified_gamma = kNaN;
    row.alpha = kNaN;
    row.beta = kNaN;
    try {
      const AlgorithmRealization alg =
          t.named ? named_algorithm(t.name, config.fc)
                  : make_preset(Preset::GD, t.params);
      if (auto it = alg.params.find("alpha"); it != alg.params.end()) row.alpha = it->second;
      if (auto it = alg.params.find("beta"); it != alg.params.end()) row.beta = it->second;

      CertifySettings rate_cs;
      rate_cs.ell = config.ell_rate;
      rate_cs.bisect_tol = config.bisect_tol;
      rate_cs.solver = config.solver;
      const RateOutcome rate_out = certify_rate(alg, config.fc, rate_cs);

      CertifySettings sens_cs;
      sens_cs.ell = config.ell_sens;
      sens_cs.solver = config.solver;
      const SensitivityOutcome sens_out =
          certify_sensitivity(alg, config.fc, config.sigma, config.d, sens_cs);

      row.certified_rate = rate_out.certificate ? rate_out.certificate->r_upper : 1.0;
      row.certified_gamma =
          sens_out.certificate ? sens_out.certificate->gamma : kNaN;
      if (rate_out.certificate && sens_out.certificate) {
        row.flag = "certified";
      } else if (!rate_out.certificate && !sens_out.certificate) {
        row.flag = "no-certificate";
      } else {
        row.flag = rate_out.certificate ? "no-sensitivity-certificate"
                                        : "no-rate-certificate";
      }
    } catch (const std::exception& e) {
      row.flag = "error: " + sanitize_csv_field(e.what());
    }
  });
  return rows;
}

void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffRow>& rows) {
  os << "algorithm,tuning,certified_rate,certified_gamma\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << sanitize_csv_field(r.tuning) << ','
       << format_double(r.certified_rate) << ',' << format_double(r.certified_gamma)
       << '\n';
  }
}

std::string rate_sweep_gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale x\n"
     << "set xlabel 'condition number'\n"
     << "set ylabel 'worst-case contraction factor'\n"
     << "set key bottom right\n"
     << "plot \\\n";
  const char* names[] = {"gd", "hb", "fg", "fgstar", "tmm"};
  for (size_t i = 0; i < 5; ++i) {
    os << "  '" << csv_path << "' using (strcol(2) eq '" << names[i]
       << "' ? $1 : NaN):3 with linespoints title '" << names[i] << " certified'";
    os << (i + 1 < 5 ? ", \\\n" : "\n");
  }
  return os.str();
}

std::string tradeoff_gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set xlabel 'certified noise sensitivity'\n"
     << "set ylabel 'certified contraction factor'\n"
     << "set key top right\n"
     << "plot \\\n"
     << "  '" << csv_path
     << "' using (strcol(1) eq 'gd' ? $4 : NaN):3 with points pt 7 title 'gd sweep', \\\n"
     << "  '" << csv_path
     << "' using (strcol(1) ne 'gd' ? $4 : NaN):3 with points pt 5 title 'presets'\n";
  return os.str();
}

}  // namespace algocert
