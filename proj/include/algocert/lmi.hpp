#pragma once

#include <string>
#include <vector>

#include "algocert/interp.hpp"
#include "algocert/lifting.hpp"
#include "algocert/types.hpp"

namespace algocert {

/// Decision variables of the certification LMIs: the Lyapunov matrix P
/// (symmetric, not required PSD), the function-value weights p, and two
/// elementwise-nonnegative multiplier matrices combining interpolation
/// inequalities. Lambda diagonals are identically zero (self-pairs vanish).
struct LmiVariables {
  Matrix P;        // state_dim x state_dim, symmetric
  Vector p;        // length ell
  Matrix Lambda1;  // (ell+2) x (ell+2), >= 0
  Matrix Lambda2;  // (ell+2) x (ell+2), >= 0
};

/// Flat layout of the decision vector: svec(P) | p | offdiag(Lambda1) |
/// offdiag(Lambda2). Lambda diagonals are excluded (they contribute nothing).
struct VariableLayout {
  int state_dim = 0;   // P is state_dim x state_dim
  int p_len = 0;       // ell
  int lambda_dim = 0;  // ell + 2

  int p_size() const { return state_dim * (state_dim + 1) / 2; }
  int lambda_size() const { return lambda_dim * (lambda_dim - 1); }  // off-diagonals
  int num_vars() const { return p_size() + p_len + 2 * lambda_size(); }

  int p_offset() const { return 0; }
  int pvec_offset() const { return p_size(); }
  int lambda1_offset() const { return p_size() + p_len; }
  int lambda2_offset() const { return lambda1_offset() + lambda_size(); }

  Vector pack(const LmiVariables& vars) const;
  LmiVariables unpack(const Vector& u) const;

  /// Indices of variables constrained to be nonnegative (the Lambda entries).
  std::vector<int> nonnegative_indices() const;
};

/// expr(u) = constant + sum_k u_k coeff[k], constrained expr(u) <= 0 in the
/// semidefinite (matrix) or elementwise (vector) sense.
struct MatrixConstraintExpr {
  std::string name;
  Matrix constant;
  std::vector<Matrix> coeff;  // one symmetric matrix per decision variable

  Matrix evaluate(const Vector& u) const;
};

struct VectorConstraintExpr {
  std::string name;
  Vector constant;
  Matrix coeff;  // rows x num_vars

  Vector evaluate(const Vector& u) const;
};

struct LmiProblem {
  VariableLayout layout;
  std::vector<MatrixConstraintExpr> matrix_constraints;
  std::vector<VectorConstraintExpr> vector_constraints;
  Vector objective;  // empty for feasibility problems; else minimize dot(objective, u)
};

/// Feasibility system certifying |xi_k - xi*| <= C r^k: a Lur'e-Postnikov
/// Lyapunov decrease at rate r^2 combined with the aggregated interpolation
/// inequalities. Affine in (P, p, Lambda1, Lambda2) for fixed r.
LmiProblem assemble_rate_lmi(const LiftedSystem& ls, double r, const FunctionClass& fc);

/// Noise-sensitivity system: same structure with unit decay and the output
/// energy term added; minimizing H^T P H yields the certified bound
/// gamma = sqrt(sigma^2 d H^T P H).
LmiProblem assemble_sensitivity_lmi(const LiftedSystem& ls, const FunctionClass& fc);

struct ConstraintResidual {
  std::string name;
  double value = 0.0;  // max eigenvalue (matrix) or max entry (vector)
};

/// Certificate replay: substitute variables into every assembled expression.
struct ResidualReport {
  std::vector<ConstraintResidual> matrix_residuals;
  std::vector<ConstraintResidual> vector_residuals;
  double max_matrix_residual = 0.0;  // most positive max-eigenvalue
  double max_vector_residual = 0.0;  // most positive entry
  double min_lambda_entry = 0.0;

  bool pass(double tol) const {
    return max_matrix_residual <= tol && max_vector_residual <= tol &&
           min_lambda_entry >= -tol;
  }
};

ResidualReport evaluate_residuals(const LmiProblem& problem, const LmiVariables& vars);

}  // namespace algocert
