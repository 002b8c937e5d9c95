#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algocert/algorithm.hpp"
#include "algocert/types.hpp"

namespace algocert {

/// A concrete objective to run an algorithm on: gradient oracle, optional
/// value oracle, known minimizer, and the class parameters it claims to lie in.
struct ProblemInstance {
  std::function<RowVec(const RowVec&)> gradient;
  std::function<double(const RowVec&)> value;  // may be empty
  RowVec y_star;
  double f_star = 0.0;
  FunctionClass fc{1.0, 1.0};

  /// Quadratic with diagonal Hessian eigenvalues `curvatures`, minimizer
  /// y_star: f(y) = 0.5 sum_i q_i (y_i - y*_i)^2.
  static ProblemInstance quadratic(const Vector& curvatures, const RowVec& y_star,
                                   const FunctionClass& fc);
};

struct NoiseModel {
  enum class Dist { gaussian, uniform, rademacher };
  double sigma = 0.0;
  Dist dist = Dist::gaussian;
  std::uint64_t seed = 0;
};

struct SimulationTrace {
  std::vector<double> state_err;    // |xi_k - xi*|_F
  std::vector<double> iterate_err;  // |x_k - x*| of the leading state row
  std::vector<double> values;       // f_k - f* when a value oracle is present
  std::vector<RowVec> outputs;      // y_k
  int steps_to_tol = -1;            // first k with iterate_err < tol, -1 if never
  double empirical_rate = 0.0;      // tail slope of log state error
  double time_avg_sq_output_err = 0.0;
  bool diverged = false;
};

/// Run the closed loop xi_{k+1} = A xi_k + B (grad f(y_k) + w_k) from the
/// cold start xi_0 = v x0 (x0 replicated along the fixed-point direction).
/// Aborts with the diverged flag once the state error exceeds 1e12.
SimulationTrace run(const AlgorithmRealization& alg, const ProblemInstance& instance,
                    const RowVec& x0, int steps,
                    const std::optional<NoiseModel>& noise = std::nullopt,
                    double tol = 1e-6);

struct SensitivityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int horizon = 0;
  int replications = 0;
};

/// Monte-Carlo estimate of sqrt((1/T) sum |y_k - y*|^2), averaged over
/// independently seeded replications.
SensitivityEstimate empirical_sensitivity(const AlgorithmRealization& alg,
                                          const ProblemInstance& instance,
                                          const NoiseModel& noise, int horizon,
                                          int replications);

struct Fig1Row {
  std::string algorithm;
  ParamMap params;
  int steps = -1;
  SimulationTrace trace;
};

/// The two-dimensional quadratic benchmark f(u, v) = u^2 + 10 v^2 from
/// x0 = (-5, 1.5): runs GD/HB/FG at their quadratic-optimal tunings and
/// reports steps to |x_k - x*| < 1e-6.
std::vector<Fig1Row> fig1_experiment();

}  // namespace algocert
