#include "algocert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace algocert {

namespace {

// Zero out roundoff-negative multiplier entries when doing so keeps the
// witness strictly feasible; otherwise return it untouched. Interior-point
// iterates satisfy the sign constraints only up to the solver tolerance.
LmiVariables tidy_witness(const LmiProblem& prob, const Vector& u) {
  LmiVariables raw = prob.layout.unpack(u);
  LmiVariables clean = raw;
  bool changed = false;
  for (Matrix* lam : {&clean.Lambda1, &clean.Lambda2}) {
    for (int i = 0; i < lam->rows(); ++i) {
      for (int j = 0; j < lam->cols(); ++j) {
        if ((*lam)(i, j) < 0.0) {
          (*lam)(i, j) = 0.0;
          changed = true;
        }
      }
    }
  }
  if (!changed) return raw;
  if (normalized_margin(prob, prob.layout.pack(clean)) > 0.0) return clean;
  return raw;
}

int effective_ell(const CertifySettings& st, int mode_default) {
  const int ell = st.ell >= 0 ? st.ell : mode_default;
  if (ell < 0) throw std::invalid_argument("memory length must be nonnegative");
  return ell;
}

}  // namespace

RateOutcome certify_rate(const AlgorithmRealization& alg, const FunctionClass& fc,
                         const CertifySettings& settings) {
  alg.validate();
  if (settings.r_max <= 0.0 || settings.r_max > 1.0) {
    throw std::invalid_argument("certify_rate: r_max must lie in (0, 1]");
  }
  if (settings.r_min < 0.0 || settings.r_min >= settings.r_max) {
    throw std::invalid_argument("certify_rate: need 0 <= r_min < r_max");
  }
  if (settings.bisect_tol <= 0.0) {
    throw std::invalid_argument("certify_rate: bisect_tol must be positive");
  }
  const int ell = effective_ell(settings, 1);
  const LiftedSystem ls = build_lifted(alg, ell);

  RateOutcome outcome;
  SolveReport best;
  LmiProblem best_prob;
  SolveStatus last_status = SolveStatus::Failed;

  auto try_rate = [&](double r) -> bool {
    LmiProblem prob = assemble_rate_lmi(ls, r, fc);
    SolveReport rep = solve_feasibility(prob, settings.solver);
    outcome.history.push_back({r, rep.feasible, rep.margin});
    last_status = rep.status;
    if (rep.feasible) {
      best = rep;
      best_prob = std::move(prob);
    }
    return rep.feasible;
  };

  if (!try_rate(settings.r_max)) {
    std::ostringstream os;
    os << "no contraction certificate at memory " << ell << ": solver reported "
       << to_string(last_status) << " at rate " << settings.r_max;
    outcome.reason = os.str();
    return outcome;
  }

  double lo = settings.r_min;
  double hi = settings.r_max;
  while (hi - lo > settings.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (try_rate(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // Validate the bracket endpoint once more with a tightened solver tolerance;
  // the stored witness comes from this solve when it succeeds.
  {
    LmiProblem prob = assemble_rate_lmi(ls, hi, fc);
    SolveSettings tight = settings.solver;
    tight.tol = std::min(settings.solver.tol, 1e-10);
    SolveReport rep = solve_feasibility(prob, tight);
    outcome.history.push_back({hi, rep.feasible, rep.margin});
    if (rep.feasible) {
      best = rep;
      best_prob = std::move(prob);
    }
  }

  RateCertificate cert;
  cert.alg = alg;
  cert.fc = fc;
  cert.ell = ell;
  cert.r_upper = hi;
  cert.bisect_tol = settings.bisect_tol;
  cert.vars = tidy_witness(best_prob, best.u);
  cert.history = outcome.history;
  cert.solve = best;
  outcome.certificate = std::move(cert);
  return outcome;
}

SensitivityOutcome certify_sensitivity(const AlgorithmRealization& alg,
                                       const FunctionClass& fc, double sigma, int d,
                                       const CertifySettings& settings) {
  alg.validate();
  if (sigma < 0.0) throw std::invalid_argument("certify_sensitivity: sigma must be >= 0");
  if (d <= 0) throw std::invalid_argument("certify_sensitivity: dimension must be positive");
  const int ell = effective_ell(settings, 6);
  const LiftedSystem ls = build_lifted(alg, ell);
  const LmiProblem prob = assemble_sensitivity_lmi(ls, fc);

  SensitivityOutcome outcome;
  const SolveReport rep = solve_minimize(prob, settings.solver);
  if (!rep.feasible) {
    std::ostringstream os;
    os << "no sensitivity certificate at memory " << ell
       << ": solver reported " << to_string(rep.status);
    outcome.reason = os.str();
    return outcome;
  }

  SensitivityCertificate cert;
  cert.alg = alg;
  cert.fc = fc;
  cert.ell = ell;
  cert.sigma = sigma;
  cert.d = d;
  cert.vars = tidy_witness(prob, rep.u);
  cert.noise_energy = std::max(0.0, (ls.H.transpose() * cert.vars.P * ls.H)(0, 0));
  cert.gamma = sigma * std::sqrt(static_cast<double>(d) * cert.noise_energy);
  cert.solve = rep;
  outcome.certificate = std::move(cert);
  return outcome;
}

double sensitivity_bound_from_vars(const AlgorithmRealization& alg, int ell,
                                   const LmiVariables& vars, double sigma, int d) {
  const LiftedSystem ls = build_lifted(alg, ell);
  const double energy = (ls.H.transpose() * vars.P * ls.H)(0, 0);
  return sigma * std::sqrt(static_cast<double>(d) * std::max(0.0, energy));
}

ResidualReport replay_rate_certificate(const RateCertificate& cert) {
  const LiftedSystem ls = build_lifted(cert.alg, cert.ell);
  const LmiProblem prob = assemble_rate_lmi(ls, cert.r_upper, cert.fc);
  return evaluate_residuals(prob, cert.vars);
}

ResidualReport replay_sensitivity_certificate(const SensitivityCertificate& cert) {
  const LiftedSystem ls = build_lifted(cert.alg, cert.ell);
  const LmiProblem prob = assemble_sensitivity_lmi(ls, cert.fc);
  return evaluate_residuals(prob, cert.vars);
}

}  // namespace algocert
