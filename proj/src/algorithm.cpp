#include "algocert/algorithm.hpp"

#include <cctype>
#include <cmath>

namespace algocert {

Preset preset_from_string(const std::string& name) {
  std::string up = name;
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "GD") return Preset::GD;
  if (up == "HB") return Preset::HB;
  if (up == "FG") return Preset::FG;
  if (up == "TMM") return Preset::TMM;
  throw std::invalid_argument("unknown preset: " + name);
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::GD: return "GD";
    case Preset::HB: return "HB";
    case Preset::FG: return "FG";
    case Preset::TMM: return "TMM";
  }
  throw std::logic_error("unreachable");
}

void AlgorithmRealization::validate(double tol) const {
  if (n <= 0) throw std::invalid_argument("state dimension must be positive");
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("A must be n x n");
  if (B.rows() != n || B.cols() != 1) throw std::invalid_argument("B must be n x 1");
  if (C.rows() != 1 || C.cols() != n) throw std::invalid_argument("C must be 1 x n");
  if (fixed_point_direction.size() != n) {
    throw std::invalid_argument("fixed_point_direction must have length n");
  }
  const Vector& v = fixed_point_direction;
  if ((A * v - v).lpNorm<Eigen::Infinity>() > tol) {
    throw std::invalid_argument("fixed-point direction violates A v = v");
  }
  if (std::abs((C * v)(0, 0) - 1.0) > tol) {
    throw std::invalid_argument("fixed-point direction violates C v = 1");
  }
}

namespace {

double require_param(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter: " + key);
  return it->second;
}

}  // namespace

AlgorithmRealization make_preset(Preset preset, const ParamMap& params) {
  const double alpha = require_param(params, "alpha");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");

  AlgorithmRealization alg;
  alg.params = params;
  alg.label = to_string(preset);

  switch (preset) {
    case Preset::GD: {
      alg.n = 1;
      alg.A = Matrix::Constant(1, 1, 1.0);
      alg.B = Matrix::Constant(1, 1, -alpha);
      alg.C = Matrix::Constant(1, 1, 1.0);
      break;
    }
    case Preset::HB:
    case Preset::FG: {
      const double beta = require_param(params, "beta");
      alg.n = 2;
      alg.A.resize(2, 2);
      alg.A << 1.0 + beta, -beta, 1.0, 0.0;
      alg.B.resize(2, 1);
      alg.B << -alpha, 0.0;
      alg.C.resize(1, 2);
      if (preset == Preset::HB) {
        alg.C << 1.0, 0.0;
      } else {
        alg.C << 1.0 + beta, -beta;
      }
      break;
    }
    case Preset::TMM: {
      // Same second-order structure as HB/FG; the gradient is evaluated at a
      // separately interpolated point parameterized by gamma.
      const double beta = require_param(params, "beta");
      const double gamma = require_param(params, "gamma");
      alg.n = 2;
      alg.A.resize(2, 2);
      alg.A << 1.0 + beta, -beta, 1.0, 0.0;
      alg.B.resize(2, 1);
      alg.B << -alpha, 0.0;
      alg.C.resize(1, 2);
      alg.C << 1.0 + gamma, -gamma;
      break;
    }
  }
  alg.fixed_point_direction = Vector::Ones(alg.n);
  alg.validate();
  return alg;
}

AlgorithmRealization make_custom(const Matrix& A, const Matrix& B, const Matrix& C,
                                 const Vector& fixed_point_direction) {
  AlgorithmRealization alg;
  alg.n = static_cast<int>(A.rows());
  alg.A = A;
  alg.B = B;
  alg.C = C;
  alg.fixed_point_direction = fixed_point_direction;
  alg.label = "custom";
  alg.validate();
  return alg;
}

ParamMap tune_quadratic_optimal(Preset preset, const FunctionClass& fc) {
  const double m = fc.m, L = fc.L, kappa = fc.kappa();
  switch (preset) {
    case Preset::GD:
      return {{"alpha", 2.0 / (L + m)}};
    case Preset::HB: {
      const double sk = std::sqrt(kappa);
      const double beta = ((sk - 1.0) / (sk + 1.0)) * ((sk - 1.0) / (sk + 1.0));
      return {{"alpha", 4.0 / ((std::sqrt(L) + std::sqrt(m)) * (std::sqrt(L) + std::sqrt(m)))},
              {"beta", beta}};
    }
    case Preset::FG: {
      const double s = std::sqrt(3.0 * kappa + 1.0);
      return {{"alpha", 4.0 / (3.0 * L + m)}, {"beta", (s - 2.0) / (s + 2.0)}};
    }
    case Preset::TMM:
      return tune_tmm(fc);
  }
  throw std::logic_error("unreachable");
}

ParamMap tune_fg_estimating_sequences(const FunctionClass& fc) {
  const double sL = std::sqrt(fc.L), sm = std::sqrt(fc.m);
  return {{"alpha", 1.0 / fc.L}, {"beta", (sL - sm) / (sL + sm)}};
}

ParamMap tune_tmm(const FunctionClass& fc) {
  const double rho = 1.0 - 1.0 / std::sqrt(fc.kappa());
  return {{"alpha", (1.0 + rho) / fc.L},
          {"beta", rho * rho / (2.0 - rho)},
          {"gamma", rho * rho / ((1.0 + rho) * (2.0 - rho))}};
}

double quadratic_rate_formula(RateFormula which, const FunctionClass& fc) {
  const double kappa = fc.kappa();
  switch (which) {
    case RateFormula::GD:
      return (kappa - 1.0) / (kappa + 1.0);
    case RateFormula::HB: {
      const double sk = std::sqrt(kappa);
      return (sk - 1.0) / (sk + 1.0);
    }
    case RateFormula::FG: {
      const double s = std::sqrt(3.0 * kappa + 1.0);
      return (s - 2.0) / s;
    }
    case RateFormula::FGstar:
      return std::sqrt(1.0 - std::sqrt(fc.m / fc.L));
  }
  throw std::logic_error("unreachable");
}

double tmm_reference_rate(const FunctionClass& fc) {
  return 1.0 - 1.0 / std::sqrt(fc.kappa());
}

FixedPoint make_fixed_point(const AlgorithmRealization& alg, const RowVec& y_star,
                            double f_star) {
  FixedPoint fp;
  fp.xi_star = alg.fixed_point_direction * y_star;
  fp.y_star = y_star;
  fp.u_star = RowVec::Zero(y_star.size());
  fp.f_star = f_star;
  return fp;
}

}  // namespace algocert
