// End-to-end acceptance suite. Each criterion prints exactly one line:
//
//   [PASS|FAIL] criterion NN: <what was checked> (<measured vs pinned>)
//
// and the process exits nonzero when any criterion fails. Tolerances and
// frozen regression values are pinned inline; loosening them here is the
// only way to weaken the suite, which is the point.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algocert/certify.hpp"
#include "algocert/interp.hpp"
#include "algocert/json_io.hpp"
#include "algocert/lifting.hpp"
#include "algocert/quadratic_oracle.hpp"
#include "algocert/simulate.hpp"
#include "algocert/sweeps.hpp"

using namespace algocert;

namespace {

using Verdict = std::pair<bool, std::string>;

struct Suite {
  bool all_ok = true;

  void run(int id, const char* title, const std::function<Verdict()>& body) {
    bool ok = false;
    std::string detail;
    try {
      auto v = body();
      ok = v.first;
      detail = v.second;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %02d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) all_ok = false;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Curvature on [m, L] whose stationary output variance under unit white noise
// is largest; used to aim the Monte-Carlo runs at the hardest quadratic.
double worst_variance_curvature(const AlgorithmRealization& alg, const FunctionClass& fc) {
  double best_q = fc.m;
  double best_v = -1.0;
  const int n = 201;
  for (int i = 0; i < n; ++i) {
    const double q = fc.m + (fc.L - fc.m) * i / (n - 1.0);
    const Matrix T = closed_loop(alg, q);
    if (spectral_radius(T) >= 1.0) continue;
    const Matrix X = solve_discrete_lyapunov(T, alg.B * alg.B.transpose());
    const double v = (alg.C * X * alg.C.transpose())(0, 0);
    if (v > best_v) {
      best_v = v;
      best_q = q;
    }
  }
  return best_q;
}

}  // namespace

int main() {
  Suite suite;

  // Certificates produced along the way; criterion 11 replays every one.
  std::vector<RateCertificate> rate_certs;
  std::vector<SensitivityCertificate> sens_certs;
  // Certified rates of the two accelerated-gradient tunings, per kappa.
  std::vector<double> fg_quad_rate, fg_est_rate;

  suite.run(1, "exact quadratic oracle matches the closed-form rates", [&]() -> Verdict {
    double worst = 0.0;
    for (const double kappa : {1.5, 2.0, 5.0, 10.0, 100.0, 1000.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto grid = CurvatureGrid::make(fc);
      const struct {
        Preset preset;
        RateFormula formula;
      } cases[] = {{Preset::GD, RateFormula::GD},
                   {Preset::HB, RateFormula::HB},
                   {Preset::FG, RateFormula::FG}};
      for (const auto& c : cases) {
        const auto alg = make_preset(c.preset, tune_quadratic_optimal(c.preset, fc));
        const double got = worst_case_rate_quadratic(alg, fc, grid);
        const double want = quadratic_rate_formula(c.formula, fc);
        worst = std::max(worst, std::abs(got - want));
      }
    }
    return {worst <= 1e-6, "max deviation " + fmt(worst) + " <= 1e-6"};
  });

  suite.run(2, "certified gradient-descent rate equals (k-1)/(k+1) at memory 1",
            [&]() -> Verdict {
    double worst = 0.0;
    bool ok = true;
    for (const double kappa : {2.0, 10.0, 100.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto alg = make_preset(Preset::GD, tune_quadratic_optimal(Preset::GD, fc));
      CertifySettings st;
      st.ell = 1;
      st.bisect_tol = 2e-5;
      const auto out = certify_rate(alg, fc, st);
      if (!out.certificate) return {false, "no certificate at kappa " + fmt(kappa)};
      rate_certs.push_back(*out.certificate);
      worst = std::max(worst,
                       std::abs(out.certificate->r_upper - (kappa - 1.0) / (kappa + 1.0)));
    }
    ok = worst <= 1e-3;
    return {ok, "max deviation " + fmt(worst) + " <= 1e-3"};
  });

  suite.run(3, "estimating-sequences tuning certifies below its closed-form guarantee",
            [&]() -> Verdict {
    bool ok = true;
    std::string detail;
    for (const double kappa : {10.0, 100.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto alg = make_preset(Preset::FG, tune_fg_estimating_sequences(fc));
      CertifySettings st;
      st.ell = 1;
      st.bisect_tol = 2e-5;
      const auto out = certify_rate(alg, fc, st);
      if (!out.certificate) return {false, "no certificate at kappa " + fmt(kappa)};
      rate_certs.push_back(*out.certificate);
      const double cap = std::sqrt(1.0 - std::sqrt(fc.m / fc.L)) + 1e-3;
      const double r = out.certificate->r_upper;
      fg_est_rate.push_back(r);
      ok = ok && r <= cap;
      if (!detail.empty()) detail += ", ";
      detail += "kappa " + fmt(kappa) + ": " + fmt(r) + " <= " + fmt(cap);
    }
    return {ok, detail};
  });

  suite.run(4, "quadratic-optimal accelerated tuning certifies strictly tighter",
            [&]() -> Verdict {
    bool ok = true;
    std::string detail;
    int i = 0;
    for (const double kappa : {10.0, 100.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto alg = make_preset(Preset::FG, tune_quadratic_optimal(Preset::FG, fc));
      CertifySettings st;
      st.ell = 1;
      st.bisect_tol = 2e-5;
      const auto out = certify_rate(alg, fc, st);
      if (!out.certificate) return {false, "no certificate at kappa " + fmt(kappa)};
      rate_certs.push_back(*out.certificate);
      const double r = out.certificate->r_upper;
      fg_quad_rate.push_back(r);
      ok = ok && i < static_cast<int>(fg_est_rate.size()) && r < fg_est_rate[i];
      if (!detail.empty()) detail += ", ";
      detail += "kappa " + fmt(kappa) + ": " + fmt(r) + " < " +
                (i < static_cast<int>(fg_est_rate.size()) ? fmt(fg_est_rate[i]) : "n/a");
      ++i;
    }
    return {ok, detail};
  });

  suite.run(5, "heavy-ball failure threshold is frozen at conditioning 25",
            [&]() -> Verdict {
    int smallest = -1;
    for (const double kappa : {5.0, 10.0, 25.0, 50.0, 100.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto hb = make_preset(Preset::HB, tune_quadratic_optimal(Preset::HB, fc));
      const auto hb_out = certify_rate(hb, fc);
      if (hb_out.certificate) {
        rate_certs.push_back(*hb_out.certificate);
        continue;
      }
      const auto gd = make_preset(Preset::GD, tune_quadratic_optimal(Preset::GD, fc));
      const auto gd_out = certify_rate(gd, fc);
      if (!gd_out.certificate) {
        return {false, "gradient descent lost its certificate at kappa " + fmt(kappa)};
      }
      rate_certs.push_back(*gd_out.certificate);
      smallest = static_cast<int>(kappa);
      break;
    }
    return {smallest == 25,
            "smallest no-certificate conditioning " + std::to_string(smallest) +
                ", frozen value 25"};
  });

  suite.run(6, "triple-momentum certifies below its reference rate at memory 4",
            [&]() -> Verdict {
    bool ok = true;
    std::string detail;
    for (const double kappa : {10.0, 100.0}) {
      const FunctionClass fc = FunctionClass::from_kappa(kappa);
      const auto alg = make_preset(Preset::TMM, tune_tmm(fc));
      CertifySettings st;
      st.ell = 4;
      st.bisect_tol = 2e-5;
      const auto out = certify_rate(alg, fc, st);
      if (!out.certificate) return {false, "no certificate at kappa " + fmt(kappa)};
      rate_certs.push_back(*out.certificate);
      const double cap = tmm_reference_rate(fc) + 1e-3;
      const double r = out.certificate->r_upper;
      ok = ok && r <= cap;
      if (!detail.empty()) detail += ", ";
      detail += "kappa " + fmt(kappa) + ": " + fmt(r) + " <= " + fmt(cap);
    }
    return {ok, detail};
  });

  suite.run(7, "certified noise sensitivity dominates the oracle and the simulations",
            [&]() -> Verdict {
    const FunctionClass fc(1.0, 8.0);
    const auto grid = CurvatureGrid::make(fc);
    CertifySettings st;
    st.ell = 6;

    struct Entry {
      std::string label;
      AlgorithmRealization alg;
    };
    std::vector<Entry> entries = {
        {"gd a=0.05", make_preset(Preset::GD, {{"alpha", 0.05}})},
        {"gd a=2/9", make_preset(Preset::GD, {{"alpha", 2.0 / 9.0}})},
        {"fg", make_preset(Preset::FG, tune_quadratic_optimal(Preset::FG, fc))},
    };

    bool ok = true;
    std::string detail;
    for (const auto& e : entries) {
      const auto out = certify_sensitivity(e.alg, fc, 1.0, 1, st);
      if (!out.certificate) return {false, e.label + ": no certificate"};
      sens_certs.push_back(*out.certificate);
      const double gamma = out.certificate->gamma;
      const double oracle = quadratic_sensitivity(e.alg, fc, 1.0, 1, grid);
      ok = ok && gamma >= oracle - 1e-6;

      const double q = worst_variance_curvature(e.alg, fc);
      const auto inst =
          ProblemInstance::quadratic(Vector::Constant(1, q), RowVec::Zero(1), fc);
      NoiseModel noise;
      noise.sigma = 1.0;
      noise.seed = 20250817;
      const auto est = empirical_sensitivity(e.alg, inst, noise, 100000, 20);
      ok = ok && est.mean <= gamma + 3.0 * est.std_error;

      if (!detail.empty()) detail += "; ";
      detail += e.label + ": gamma " + fmt(gamma) + " >= oracle " + fmt(oracle) +
                ", empirical " + fmt(est.mean);
    }

    // The stepsize at the stability edge must fail consistently on both sides.
    const auto edge = make_preset(Preset::GD, {{"alpha", 0.25}});
    const bool no_cert = !certify_sensitivity(edge, fc, 1.0, 1, st).certificate.has_value();
    bool oracle_unstable = false;
    try {
      quadratic_sensitivity(edge, fc, 1.0, 1, grid);
    } catch (const std::domain_error&) {
      oracle_unstable = true;
    }
    ok = ok && no_cert && oracle_unstable;
    detail += "; gd a=0.25: unbounded on both sides";
    return {ok, detail};
  });

  suite.run(8, "overlong stepsizes are pareto-dominated in the trade-off sweep",
            [&]() -> Verdict {
    TradeoffConfig cfg;  // (m, L) = (1, 8), 24 stepsizes, sigma = 1, d = 1
    cfg.include_presets = false;
    cfg.jobs = 4;
    const auto rows = run_tradeoff_sweep(cfg);
    const double a_star = 2.0 / (cfg.fc.L + cfg.fc.m);
    const auto gamma_of = [](const TradeoffRow& r) {
      return std::isnan(r.certified_gamma) ? std::numeric_limits<double>::infinity()
                                           : r.certified_gamma;
    };
    int overlong = 0, dominated = 0;
    for (const auto& p : rows) {
      if (!(p.alpha > a_star + 1e-12)) continue;
      ++overlong;
      for (const auto& q : rows) {
        if (q.alpha > a_star + 1e-12) continue;
        const bool no_worse = q.certified_rate <= p.certified_rate &&
                              gamma_of(q) <= gamma_of(p);
        const bool strictly = q.certified_rate < p.certified_rate ||
                              gamma_of(q) < gamma_of(p);
        if (no_worse && strictly) {
          ++dominated;
          break;
        }
      }
    }
    return {overlong > 0 && dominated == overlong,
            std::to_string(dominated) + " of " + std::to_string(overlong) +
                " overlong stepsizes dominated"};
  });

  suite.run(9, "lifted dynamics replay base trajectories on random quadratics",
            [&]() -> Verdict {
    std::mt19937 rng(5081);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    int checked = 0;

    for (int rep = 0; rep < 3; ++rep) {
      for (const Preset p : {Preset::GD, Preset::HB, Preset::FG, Preset::TMM}) {
        const double kappa = 1.5 + 98.5 * unif(rng);
        const FunctionClass fc = FunctionClass::from_kappa(kappa);
        const auto alg = make_preset(p, tune_quadratic_optimal(p, fc));
        const double q = fc.m + (fc.L - fc.m) * unif(rng);
        const double center = gauss(rng);

        for (const int ell : {0, 1, 2, 3}) {
          const auto ls = build_lifted(alg, ell);
          if (ell == 0) {
            // No memory: the embedding must be the base realization verbatim.
            if ((ls.A - alg.A).norm() != 0.0 || (ls.B - alg.B).norm() != 0.0 ||
                (ls.H - alg.B).norm() != 0.0 ||
                (ls.C.topRows(1) - alg.C).norm() != 0.0) {
              return {false, "memory-0 embedding differs from the base realization"};
            }
          }
          Vector xi(alg.n);
          for (int i = 0; i < alg.n; ++i) xi(i) = gauss(rng);
          Vector z = Vector::Zero(ls.state_dim());
          z.head(alg.n) = xi;

          std::vector<double> ys, us;
          for (int k = 0; k < 20; ++k) {
            const double y = (alg.C * xi)(0, 0);
            const double u = q * (y - center);  // in-class quadratic gradient
            ys.push_back(y);
            us.push_back(u);
            const Vector io = ls.C * z + ls.D * Vector::Constant(1, u);
            for (int j = 0; j <= ell; ++j) {
              const double ye = k - j >= 0 ? ys[k - j] : 0.0;
              const double ue = k - j >= 0 ? us[k - j] : 0.0;
              worst = std::max(worst, std::abs(io(j) - ye));
              worst = std::max(worst, std::abs(io(ell + 1 + j) - ue));
            }
            xi = alg.A * xi + alg.B * u;
            z = ls.A * z + ls.B * u;
            worst = std::max(worst, (z.head(alg.n) - xi).lpNorm<Eigen::Infinity>());
          }
          ++checked;
        }
      }
    }
    return {worst <= 1e-12, std::to_string(checked) + " trajectories, max deviation " +
                                fmt(worst) + " <= 1e-12"};
  });

  suite.run(10, "interpolation check accepts in-class data and pins violations",
            [&]() -> Verdict {
    std::mt19937 rng(40961);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    int in_pass = 0;
    const int in_total = 1000;
    for (int t = 0; t < in_total; ++t) {
      const double m = 0.5 + 1.5 * unif(rng);
      const double L = m * (2.0 + 18.0 * unif(rng));
      const FunctionClass fc(m, L);
      const int d = 1 + static_cast<int>(3.0 * unif(rng)) % 3;
      const int npts = 2 + static_cast<int>(5.0 * unif(rng)) % 5;
      Vector qs(d), c(d);
      for (int i = 0; i < d; ++i) {
        qs(i) = m + (L - m) * unif(rng);
        c(i) = gauss(rng);
      }
      std::vector<InterpPoint> pts(npts);
      for (auto& pt : pts) {
        pt.y = RowVec(d);
        pt.u = RowVec(d);
        pt.f = 0.0;
        for (int i = 0; i < d; ++i) {
          pt.y(i) = 2.0 * gauss(rng);
          pt.u(i) = qs(i) * (pt.y(i) - c(i));
          pt.f += 0.5 * qs(i) * (pt.y(i) - c(i)) * (pt.y(i) - c(i));
        }
      }
      if (interpolation_check(pts, fc).interpolable) ++in_pass;
    }

    int out_fail = 0;
    const int out_total = 200;
    for (int t = 0; t < out_total; ++t) {
      const double m = 0.5 + 1.5 * unif(rng);
      const double L = m * (2.0 + 18.0 * unif(rng));
      const FunctionClass fc(m, L);
      const bool above = unif(rng) < 0.5;
      const double q = above ? L * (1.05 + unif(rng)) : m * (0.1 + 0.7 * unif(rng));
      const int npts = 2 + static_cast<int>(4.0 * unif(rng)) % 4;
      std::vector<InterpPoint> pts(npts);
      for (int i = 0; i < npts; ++i) {
        pts[i].y = RowVec::Constant(1, 1.5 * i + unif(rng));  // well separated
        pts[i].u = q * pts[i].y;
        pts[i].f = 0.5 * q * pts[i].y(0) * pts[i].y(0);
      }
      const auto res = interpolation_check(pts, fc);
      if (res.interpolable || res.worst_i < 0 || res.worst_j < 0) continue;
      const auto& a = pts[res.worst_i];
      const auto& b = pts[res.worst_j];
      const double recomputed = qij_value(fc, a.y, b.y, a.u, b.u, a.f, b.f);
      if (recomputed < 0.0 && std::abs(recomputed - res.min_qij) <= 1e-12) ++out_fail;
    }

    return {in_pass == in_total && out_fail == out_total,
            std::to_string(in_pass) + "/" + std::to_string(in_total) + " in-class pass, " +
                std::to_string(out_fail) + "/" + std::to_string(out_total) +
                " out-of-class rejected with a violating pair"};
  });

  suite.run(11, "every certificate replays through independent re-assembly",
            [&]() -> Verdict {
    if (rate_certs.empty() || sens_certs.empty()) {
      return {false, "earlier criteria produced no certificates to replay"};
    }
    int checked = 0;
    bool ok = true;
    for (const auto& cert : rate_certs) {
      ok = ok && replay_rate_certificate(cert).pass(1e-6);
      const RateCertificate rt = rate_certificate_from_json(rate_certificate_to_json(cert));
      ok = ok && replay_rate_certificate(rt).pass(1e-6);
      ++checked;
    }
    for (const auto& cert : sens_certs) {
      ok = ok && replay_sensitivity_certificate(cert).pass(1e-6);
      const SensitivityCertificate rt =
          sensitivity_certificate_from_json(sensitivity_certificate_to_json(cert));
      ok = ok && replay_sensitivity_certificate(rt).pass(1e-6);
      ++checked;
    }
    return {ok, std::to_string(checked) +
                    " certificates replayed at 1e-6, direct and after serialization"};
  });

  suite.run(12, "benchmark step counts match the frozen momentum-vs-descent gap",
            [&]() -> Verdict {
    const auto rows = fig1_experiment();
    int gd = -1, hb = -1, fg = -1;
    for (const auto& row : rows) {
      if (row.algorithm == "GD") gd = row.steps;
      if (row.algorithm == "HB") hb = row.steps;
      if (row.algorithm == "FG") fg = row.steps;
    }
    const bool ok = gd == 78 && hb == 29 && fg == 41 && hb < gd && fg < gd;
    return {ok, "steps gd=" + std::to_string(gd) + " hb=" + std::to_string(hb) +
                    " fg=" + std::to_string(fg) + ", frozen 78/29/41"};
  });

  std::printf("%s\n", suite.all_ok ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES above");
  return suite.all_ok ? 0 : 1;
}
