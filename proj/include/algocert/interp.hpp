#pragma once

#include <vector>

#include "algocert/types.hpp"

namespace algocert {

/// The 4x4 quadratic form and 2-vector encoding the pairwise interpolation
/// inequality for F_{m,L}: with s = (y_i; y_j; u_i; u_j),
///   q_ij = trace(s^T quad s) + lin . (f_i, f_j) >= 0.
struct PairForm {
  Matrix quad;  // symmetric 4x4
  Vector h;     // length 2
};

PairForm pair_form(const FunctionClass& fc);

/// The pairwise inequality value for data (y, u, f) at two points,
///   2(L-m)(f_i - f_j) - mL|y_i - y_j|^2 + 2(y_i - y_j).(m u_i - L u_j)
///   - |u_i - u_j|^2.
/// Nonnegative for all ordered pairs iff the data set is interpolable by
/// some f in F_{m,L}.
double qij_value(const FunctionClass& fc, const RowVec& yi, const RowVec& yj,
                 const RowVec& ui, const RowVec& uj, double fi, double fj);

struct InterpPoint {
  RowVec y;
  RowVec u;
  double f = 0.0;
};

struct InterpCheckResult {
  bool interpolable = false;
  double min_qij = 0.0;
  int worst_i = -1;  // ordered pair attaining min_qij
  int worst_j = -1;
};

/// Check all ordered pairs of a data set against the F_{m,L} interpolation
/// conditions. Passes when every q_ij >= -tol.
InterpCheckResult interpolation_check(const std::vector<InterpPoint>& points,
                                      const FunctionClass& fc, double tol = 1e-9);

/// Nonnegative combination of the pairwise inequalities over the index set
/// {1, ..., ell+1, *} (the star index is the fixed point, represented by the
/// zero selector). With signals stacked relative to the fixed point,
///   trace([y;u]^T quad [y;u]) + lin . f  >=  0
/// for any data consistent with some f in F_{m,L}.
struct InterpolationMultipliers {
  Matrix quad;  // symmetric 2(ell+1) x 2(ell+1)
  Vector lin;   // length ell+1
};

/// Aggregate a multiplier matrix Lambda ((ell+2) x (ell+2), elementwise
/// nonnegative, last index = fixed point) into the combined forms. Diagonal
/// entries contribute nothing.
InterpolationMultipliers multiplier_form(const Matrix& Lambda, const FunctionClass& fc);

}  // namespace algocert
