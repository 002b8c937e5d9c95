#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algocert/algorithm.hpp"
#include "algocert/lifting.hpp"
#include "algocert/lmi.hpp"
#include "algocert/sdp.hpp"

namespace algocert {

struct BisectionStep {
  double r = 0.0;
  bool feasible = false;
  double margin = 0.0;
};

struct CertifySettings {
  int ell = -1;             // -1 picks the per-mode default: 1 (rate), 6 (sensitivity)
  double bisect_tol = 1e-4;
  double r_min = 0.0;       // lower end of the bisection bracket
  double r_max = 1.0;       // certificates are only sought below this rate
  SolveSettings solver;
};

/// Certificate that |iterate error| decays like r_upper^k from any start,
/// over every objective in the class: the witness variables satisfy the
/// assembled contraction system at r_upper.
struct RateCertificate {
  AlgorithmRealization alg;
  FunctionClass fc{1.0, 1.0};
  int ell = 1;
  double r_upper = 1.0;
  double bisect_tol = 1e-4;
  LmiVariables vars;
  std::vector<BisectionStep> history;
  SolveReport solve;
};

struct RateOutcome {
  std::optional<RateCertificate> certificate;
  std::string reason;  // set when no certificate exists at r_max
  std::vector<BisectionStep> history;
};

RateOutcome certify_rate(const AlgorithmRealization& alg, const FunctionClass& fc,
                         const CertifySettings& settings = {});

/// Certificate bounding the long-run root-mean-square output error under
/// additive gradient noise of strength sigma in dimension d:
/// gamma = sigma * sqrt(d * noise_energy) with noise_energy the certified
/// per-coordinate noise-to-output energy.
struct SensitivityCertificate {
  AlgorithmRealization alg;
  FunctionClass fc{1.0, 1.0};
  int ell = 6;
  double sigma = 1.0;
  int d = 1;
  double noise_energy = 0.0;
  double gamma = 0.0;
  LmiVariables vars;
  SolveReport solve;
};

struct SensitivityOutcome {
  std::optional<SensitivityCertificate> certificate;
  std::string reason;
};

SensitivityOutcome certify_sensitivity(const AlgorithmRealization& alg,
                                       const FunctionClass& fc, double sigma, int d,
                                       const CertifySettings& settings = {});

/// Recompute the certified bound implied by a witness, independent of any
/// solver state: gamma = sigma * sqrt(d * max(0, H^T P H)).
double sensitivity_bound_from_vars(const AlgorithmRealization& alg, int ell,
                                   const LmiVariables& vars, double sigma, int d);

/// Re-assemble the certificate's constraint system from scratch and evaluate
/// its variables in it. Solver-independent by construction.
ResidualReport replay_rate_certificate(const RateCertificate& cert);
ResidualReport replay_sensitivity_certificate(const SensitivityCertificate& cert);

}  // namespace algocert
