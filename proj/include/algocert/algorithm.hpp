#pragma once

#include <map>
#include <string>

#include "algocert/types.hpp"

namespace algocert {

enum class Preset { GD, HB, FG, TMM };

Preset preset_from_string(const std::string& name);
std::string to_string(Preset p);

using ParamMap = std::map<std::string, double>;

/// A single-input single-output state-space realization (A, B, C) of an
/// iterative algorithm, acting row-wise on each coordinate of the decision
/// variable:
///
///   xi_{k+1} = A xi_k + B u_k,   y_k = C xi_k,   u_k = grad f(y_k).
///
/// fixed_point_direction is a vector v with A v = v and C v = 1, so that
/// xi* = v y* is a fixed point whenever grad f(y*) = 0. Presets use the
/// all-ones vector.
struct AlgorithmRealization {
  Matrix A;  // n x n
  Matrix B;  // n x 1
  Matrix C;  // 1 x n
  int n = 0;
  ParamMap params;
  std::string label = "custom";
  Vector fixed_point_direction;

  /// Throws std::invalid_argument if shapes are inconsistent or the declared
  /// fixed-point direction does not satisfy A v = v, C v = 1.
  void validate(double tol = 1e-9) const;
};

/// Build a preset realization. Required params: alpha (all presets),
/// beta (HB, FG), and for TMM the derived set {alpha, beta, gamma}.
AlgorithmRealization make_preset(Preset preset, const ParamMap& params);

/// Custom realization with a declared fixed-point direction.
AlgorithmRealization make_custom(const Matrix& A, const Matrix& B, const Matrix& C,
                                 const Vector& fixed_point_direction);

/// Stepsize/momentum choices that minimize the worst-case spectral radius
/// over quadratics with Hessian spectrum in [m, L].
ParamMap tune_quadratic_optimal(Preset preset, const FunctionClass& fc);

/// The estimating-sequences tuning of the fast gradient method:
/// alpha = 1/L, beta = (sqrt(L) - sqrt(m)) / (sqrt(L) + sqrt(m)).
ParamMap tune_fg_estimating_sequences(const FunctionClass& fc);

/// Parameters of the triple momentum method for F_{m,L}. Not derived here;
/// taken from the published tuning and validated against the certified rate
/// 1 - 1/sqrt(kappa) in the acceptance suite.
ParamMap tune_tmm(const FunctionClass& fc);

enum class RateFormula { GD, HB, FG, FGstar };

/// Closed-form worst-case rates: GD and HB/FG at their quadratic-optimal
/// tunings, and FGstar for the estimating-sequences analysis of FG.
double quadratic_rate_formula(RateFormula which, const FunctionClass& fc);

/// Reference rate 1 - 1/sqrt(kappa) for the triple momentum method.
double tmm_reference_rate(const FunctionClass& fc);

/// A fixed point (xi*, y*, u* = 0) of the closed loop, stored rowwise over
/// the d problem coordinates.
struct FixedPoint {
  Matrix xi_star;  // n x d
  RowVec y_star;   // 1 x d
  RowVec u_star;   // 1 x d, identically zero
  double f_star = 0.0;
};

/// Fixed point induced by the minimizer y* of the target function:
/// xi* = v y* with v the declared fixed-point direction.
FixedPoint make_fixed_point(const AlgorithmRealization& alg, const RowVec& y_star,
                            double f_star);

}  // namespace algocert
