#include "algocert/simulate.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace algocert {

ProblemInstance ProblemInstance::quadratic(const Vector& curvatures, const RowVec& y_star,
                                           const FunctionClass& fc) {
  if (curvatures.size() != y_star.size()) {
    throw std::invalid_argument("quadratic instance: curvature/minimizer size mismatch");
  }
  ProblemInstance inst;
  inst.fc = fc;
  inst.y_star = y_star;
  inst.f_star = 0.0;
  Vector q = curvatures;
  RowVec ys = y_star;
  inst.gradient = [q, ys](const RowVec& y) -> RowVec {
    return (y - ys).cwiseProduct(q.transpose());
  };
  inst.value = [q, ys](const RowVec& y) -> double {
    return 0.5 * (y - ys).cwiseProduct(q.transpose().cwiseSqrt()).squaredNorm();
  };
  return inst;
}

namespace {

class NoiseSampler {
 public:
  NoiseSampler(const NoiseModel& model, std::uint64_t seed_offset)
      : model_(model), rng_(model.seed + seed_offset) {}

  RowVec sample(Eigen::Index d) {
    RowVec w(d);
    switch (model_.dist) {
      case NoiseModel::Dist::gaussian: {
        std::normal_distribution<double> dist(0.0, model_.sigma);
        for (Eigen::Index i = 0; i < d; ++i) w(i) = dist(rng_);
        break;
      }
      case NoiseModel::Dist::uniform: {
        const double half = std::sqrt(3.0) * model_.sigma;
        std::uniform_real_distribution<double> dist(-half, half);
        for (Eigen::Index i = 0; i < d; ++i) w(i) = dist(rng_);
        break;
      }
      case NoiseModel::Dist::rademacher: {
        std::bernoulli_distribution dist(0.5);
        for (Eigen::Index i = 0; i < d; ++i) w(i) = dist(rng_) ? model_.sigma : -model_.sigma;
        break;
      }
    }
    return w;
  }

 private:
  NoiseModel model_;
  std::mt19937_64 rng_;
};

// Least-squares slope of log(err) over the tail, skipping the transient and
// anything below 1e-10 where rounding dominates.
double tail_slope(const std::vector<double>& err) {
  std::size_t last = err.size();
  for (std::size_t k = 0; k < err.size(); ++k) {
    if (err[k] < 1e-10 || err[k] <= 0.0) {
      last = k;
      break;
    }
  }
  if (last < 4) return 0.0;
  const std::size_t first = last / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(last - first);
  for (std::size_t k = first; k < last; ++k) {
    const double x = static_cast<double>(k), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return 0.0;
  return std::exp((n * sxy - sx * sy) / denom);
}

}  // namespace

SimulationTrace run(const AlgorithmRealization& alg, const ProblemInstance& instance,
                    const RowVec& x0, int steps, const std::optional<NoiseModel>& noise,
                    double tol) {
  alg.validate();
  if (steps < 1) throw std::invalid_argument("run: steps must be >= 1");
  const Eigen::Index d = x0.size();
  if (instance.y_star.size() != d) {
    throw std::invalid_argument("run: x0/minimizer dimension mismatch");
  }

  const FixedPoint fp = make_fixed_point(alg, instance.y_star, instance.f_star);
  Matrix xi = alg.fixed_point_direction * x0;  // cold start: history filled with x0

  std::optional<NoiseSampler> sampler;
  if (noise && noise->sigma > 0.0) sampler.emplace(*noise, 0);

  SimulationTrace trace;
  trace.state_err.reserve(steps + 1);
  trace.iterate_err.reserve(steps + 1);
  trace.outputs.reserve(steps);

  double sq_output_sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    trace.state_err.push_back((xi - fp.xi_star).norm());
    trace.iterate_err.push_back((xi.row(0) - fp.y_star).norm());
    if (trace.steps_to_tol < 0 && trace.iterate_err.back() < tol) trace.steps_to_tol = k;
    if (trace.state_err.back() > 1e12) {
      trace.diverged = true;
      break;
    }

    const RowVec y = alg.C * xi;
    trace.outputs.push_back(y);
    sq_output_sum += (y - fp.y_star).squaredNorm();
    if (instance.value) trace.values.push_back(instance.value(y) - instance.f_star);

    RowVec u = instance.gradient(y);
    if (sampler) u += sampler->sample(d);
    xi = alg.A * xi + alg.B * u;
  }

  if (!trace.diverged) {
    trace.state_err.push_back((xi - fp.xi_star).norm());
    trace.iterate_err.push_back((xi.row(0) - fp.y_star).norm());
    if (trace.steps_to_tol < 0 && trace.iterate_err.back() < tol) trace.steps_to_tol = steps;
  }
  trace.empirical_rate = tail_slope(trace.state_err);
  trace.time_avg_sq_output_err =
      trace.outputs.empty() ? 0.0 : sq_output_sum / static_cast<double>(trace.outputs.size());
  return trace;
}

SensitivityEstimate empirical_sensitivity(const AlgorithmRealization& alg,
                                          const ProblemInstance& instance,
                                          const NoiseModel& noise, int horizon,
                                          int replications) {
  if (horizon < 1 || replications < 1) {
    throw std::invalid_argument("empirical_sensitivity: horizon and replications must be >= 1");
  }
  const Eigen::Index d = instance.y_star.size();
  const FixedPoint fp = make_fixed_point(alg, instance.y_star, instance.f_star);

  std::vector<double> samples;
  samples.reserve(replications);
  for (int rep = 0; rep < replications; ++rep) {
    NoiseSampler sampler(noise, static_cast<std::uint64_t>(rep) * 0x9e3779b97f4a7c15ULL);
    Matrix xi = alg.fixed_point_direction * fp.y_star;  // start at the fixed point
    double sq_sum = 0.0;
    bool diverged = false;
    for (int k = 0; k < horizon; ++k) {
      const RowVec y = alg.C * xi;
      sq_sum += (y - fp.y_star).squaredNorm();
      if (!std::isfinite(sq_sum) || sq_sum > 1e24) {
        diverged = true;
        break;
      }
      RowVec u = instance.gradient(y);
      if (noise.sigma > 0.0) u += sampler.sample(d);
      xi = alg.A * xi + alg.B * u;
    }
    samples.push_back(diverged ? std::numeric_limits<double>::infinity()
                               : std::sqrt(sq_sum / horizon));
  }

  SensitivityEstimate est;
  est.horizon = horizon;
  est.replications = replications;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= samples.size();
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  est.mean = mean;
  est.std_error = samples.size() > 1
                      ? std::sqrt(var / (samples.size() - 1.0) / samples.size())
                      : 0.0;
  return est;
}

std::vector<Fig1Row> fig1_experiment() {
  const FunctionClass fc(2.0, 20.0);  // Hessian of u^2 + 10 v^2 is diag(2, 20)
  Vector curvatures(2);
  curvatures << 2.0, 20.0;
  RowVec y_star = RowVec::Zero(2);
  const ProblemInstance instance = ProblemInstance::quadratic(curvatures, y_star, fc);
  RowVec x0(2);
  x0 << -5.0, 1.5;

  std::vector<Fig1Row> rows;
  for (Preset preset : {Preset::GD, Preset::HB, Preset::FG}) {
    Fig1Row row;
    row.algorithm = to_string(preset);
    row.params = tune_quadratic_optimal(preset, fc);
    const AlgorithmRealization alg = make_preset(preset, row.params);
    row.trace = run(alg, instance, x0, 400, std::nullopt, 1e-6);
    row.steps = row.trace.steps_to_tol;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace algocert
