#include "algocert/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace algocert {

Vector VariableLayout::pack(const LmiVariables& vars) const {
  if (vars.P.rows() != state_dim || vars.P.cols() != state_dim) {
    throw std::invalid_argument("VariableLayout::pack: P has wrong shape");
  }
  if (vars.p.size() != p_len) {
    throw std::invalid_argument("VariableLayout::pack: p has wrong length");
  }
  if (vars.Lambda1.rows() != lambda_dim || vars.Lambda1.cols() != lambda_dim ||
      vars.Lambda2.rows() != lambda_dim || vars.Lambda2.cols() != lambda_dim) {
    throw std::invalid_argument("VariableLayout::pack: Lambda has wrong shape");
  }

  Vector u(num_vars());
  int idx = 0;
  for (int j = 0; j < state_dim; ++j) {
    for (int i = j; i < state_dim; ++i) {
      u(idx++) = vars.P(i, j);
    }
  }
  for (int i = 0; i < p_len; ++i) u(idx++) = vars.p(i);
  for (const Matrix* lam : {&vars.Lambda1, &vars.Lambda2}) {
    for (int i = 0; i < lambda_dim; ++i) {
      for (int j = 0; j < lambda_dim; ++j) {
        if (i != j) u(idx++) = (*lam)(i, j);
      }
    }
  }
  return u;
}

LmiVariables VariableLayout::unpack(const Vector& u) const {
  if (u.size() != num_vars()) {
    throw std::invalid_argument("VariableLayout::unpack: wrong vector length");
  }
  LmiVariables vars;
  vars.P = Matrix::Zero(state_dim, state_dim);
  vars.p = Vector::Zero(p_len);
  vars.Lambda1 = Matrix::Zero(lambda_dim, lambda_dim);
  vars.Lambda2 = Matrix::Zero(lambda_dim, lambda_dim);

  int idx = 0;
  for (int j = 0; j < state_dim; ++j) {
    for (int i = j; i < state_dim; ++i) {
      vars.P(i, j) = u(idx);
      vars.P(j, i) = u(idx);
      ++idx;
    }
  }
  for (int i = 0; i < p_len; ++i) vars.p(i) = u(idx++);
  for (Matrix* lam : {&vars.Lambda1, &vars.Lambda2}) {
    for (int i = 0; i < lambda_dim; ++i) {
      for (int j = 0; j < lambda_dim; ++j) {
        if (i != j) (*lam)(i, j) = u(idx++);
      }
    }
  }
  return vars;
}

std::vector<int> VariableLayout::nonnegative_indices() const {
  std::vector<int> idx;
  idx.reserve(2 * lambda_size());
  for (int k = lambda1_offset(); k < num_vars(); ++k) idx.push_back(k);
  return idx;
}

Matrix MatrixConstraintExpr::evaluate(const Vector& u) const {
  Matrix M = constant;
  for (int k = 0; k < static_cast<int>(coeff.size()); ++k) {
    if (u(k) != 0.0) M += u(k) * coeff[k];
  }
  return M;
}

Vector VectorConstraintExpr::evaluate(const Vector& u) const {
  return constant + coeff * u;
}

namespace {

Matrix sym(const Matrix& M) { return 0.5 * (M + M.transpose()); }

// The constraint bodies below are written as direct evaluators on the
// structured variables; the affine coefficient data is then recovered by
// probing the evaluator at the origin and at each unit decision vector.
// This keeps the matrix algebra in one obvious place and makes certificate
// replay independent of how the solver consumed the coefficients.
MatrixConstraintExpr probe_matrix(const std::string& name, const VariableLayout& layout,
                                  const std::function<Matrix(const LmiVariables&)>& body) {
  MatrixConstraintExpr expr;
  expr.name = name;
  const int nv = layout.num_vars();
  Vector u = Vector::Zero(nv);
  expr.constant = sym(body(layout.unpack(u)));
  expr.coeff.reserve(nv);
  for (int k = 0; k < nv; ++k) {
    u(k) = 1.0;
    expr.coeff.push_back(sym(body(layout.unpack(u))) - expr.constant);
    u(k) = 0.0;
  }
  return expr;
}

VectorConstraintExpr probe_vector(const std::string& name, const VariableLayout& layout,
                                  const std::function<Vector(const LmiVariables&)>& body) {
  VectorConstraintExpr expr;
  expr.name = name;
  const int nv = layout.num_vars();
  Vector u = Vector::Zero(nv);
  expr.constant = body(layout.unpack(u));
  expr.coeff = Matrix::Zero(expr.constant.size(), nv);
  for (int k = 0; k < nv; ++k) {
    u(k) = 1.0;
    expr.coeff.col(k) = body(layout.unpack(u)) - expr.constant;
    u(k) = 0.0;
  }
  return expr;
}

Vector probe_linear_objective(const VariableLayout& layout,
                              const std::function<double(const LmiVariables&)>& body) {
  const int nv = layout.num_vars();
  Vector g(nv);
  Vector u = Vector::Zero(nv);
  const double base = body(layout.unpack(u));
  for (int k = 0; k < nv; ++k) {
    u(k) = 1.0;
    g(k) = body(layout.unpack(u)) - base;
    u(k) = 0.0;
  }
  return g;
}

struct SystemBlocks {
  Matrix J_dyn;  // [A B], state_dim x (state_dim + 1)
  Matrix J_id;   // [I 0]
  Matrix J_io;   // [C D], io_dim x (state_dim + 1)
};

SystemBlocks system_blocks(const LiftedSystem& ls) {
  const int sd = ls.state_dim();
  SystemBlocks jb;
  jb.J_dyn.resize(sd, sd + 1);
  jb.J_dyn << ls.A, ls.B;
  jb.J_id.resize(sd, sd + 1);
  jb.J_id << Matrix::Identity(sd, sd), Matrix::Zero(sd, 1);
  jb.J_io.resize(ls.io_dim(), sd + 1);
  jb.J_io << ls.C, ls.D;
  return jb;
}

VariableLayout layout_for(const LiftedSystem& ls) {
  VariableLayout layout;
  layout.state_dim = ls.state_dim();
  layout.p_len = ls.ell;
  layout.lambda_dim = ls.ell + 2;
  return layout;
}

}  // namespace

LmiProblem assemble_rate_lmi(const LiftedSystem& ls, double r, const FunctionClass& fc) {
  if (r <= 0.0) {
    throw std::invalid_argument("assemble_rate_lmi: rate must be positive");
  }
  LmiProblem prob;
  prob.layout = layout_for(ls);
  const SystemBlocks jb = system_blocks(ls);
  const TruncationPair tr = truncation_matrices(ls.ell);
  const double r2 = r * r;

  auto decrease = [&](const LmiVariables& v) -> Matrix {
    return jb.J_dyn.transpose() * v.P * jb.J_dyn -
           r2 * (jb.J_id.transpose() * v.P * jb.J_id) +
           jb.J_io.transpose() * multiplier_form(v.Lambda1, fc).quad * jb.J_io;
  };
  auto decrease_values = [&](const LmiVariables& v) -> Vector {
    return (tr.drop_oldest - r2 * tr.drop_newest).transpose() * v.p +
           multiplier_form(v.Lambda1, fc).lin;
  };
  auto bound = [&](const LmiVariables& v) -> Matrix {
    return ls.state_proj.transpose() * ls.state_proj -
           jb.J_id.transpose() * v.P * jb.J_id +
           jb.J_io.transpose() * multiplier_form(v.Lambda2, fc).quad * jb.J_io;
  };
  auto bound_values = [&](const LmiVariables& v) -> Vector {
    return -tr.drop_newest.transpose() * v.p + multiplier_form(v.Lambda2, fc).lin;
  };

  prob.matrix_constraints.push_back(probe_matrix("rate_decrease", prob.layout, decrease));
  prob.matrix_constraints.push_back(probe_matrix("rate_bound", prob.layout, bound));
  prob.vector_constraints.push_back(
      probe_vector("rate_decrease_values", prob.layout, decrease_values));
  prob.vector_constraints.push_back(
      probe_vector("rate_bound_values", prob.layout, bound_values));
  return prob;
}

LmiProblem assemble_sensitivity_lmi(const LiftedSystem& ls, const FunctionClass& fc) {
  LmiProblem prob;
  prob.layout = layout_for(ls);
  const SystemBlocks jb = system_blocks(ls);
  const TruncationPair tr = truncation_matrices(ls.ell);

  auto decrease = [&](const LmiVariables& v) -> Matrix {
    return jb.J_dyn.transpose() * v.P * jb.J_dyn -
           jb.J_id.transpose() * v.P * jb.J_id +
           jb.J_io.transpose() * multiplier_form(v.Lambda1, fc).quad * jb.J_io +
           ls.output_proj.transpose() * ls.output_proj;
  };
  auto decrease_values = [&](const LmiVariables& v) -> Vector {
    return (tr.drop_oldest - tr.drop_newest).transpose() * v.p +
           multiplier_form(v.Lambda1, fc).lin;
  };
  auto bound = [&](const LmiVariables& v) -> Matrix {
    return -(jb.J_id.transpose() * v.P * jb.J_id) +
           jb.J_io.transpose() * multiplier_form(v.Lambda2, fc).quad * jb.J_io;
  };
  auto bound_values = [&](const LmiVariables& v) -> Vector {
    return -tr.drop_newest.transpose() * v.p + multiplier_form(v.Lambda2, fc).lin;
  };
  auto noise_energy = [&](const LmiVariables& v) -> double {
    return (ls.H.transpose() * v.P * ls.H)(0, 0);
  };

  prob.matrix_constraints.push_back(probe_matrix("sens_decrease", prob.layout, decrease));
  prob.matrix_constraints.push_back(probe_matrix("sens_bound", prob.layout, bound));
  prob.vector_constraints.push_back(
      probe_vector("sens_decrease_values", prob.layout, decrease_values));
  prob.vector_constraints.push_back(
      probe_vector("sens_bound_values", prob.layout, bound_values));
  prob.objective = probe_linear_objective(prob.layout, noise_energy);
  return prob;
}

ResidualReport evaluate_residuals(const LmiProblem& problem, const LmiVariables& vars) {
  const Vector u = problem.layout.pack(vars);
  ResidualReport report;
  report.max_matrix_residual = -std::numeric_limits<double>::infinity();
  report.max_vector_residual = -std::numeric_limits<double>::infinity();

  for (const auto& mc : problem.matrix_constraints) {
    const Matrix M = sym(mc.evaluate(u));
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    const double lam_max = es.eigenvalues().maxCoeff();
    report.matrix_residuals.push_back({mc.name, lam_max});
    report.max_matrix_residual = std::max(report.max_matrix_residual, lam_max);
  }
  for (const auto& vc : problem.vector_constraints) {
    const Vector v = vc.evaluate(u);
    const double worst = v.size() > 0 ? v.maxCoeff() : 0.0;
    report.vector_residuals.push_back({vc.name, worst});
    report.max_vector_residual = std::max(report.max_vector_residual, worst);
  }
  if (problem.matrix_constraints.empty()) report.max_matrix_residual = 0.0;
  if (problem.vector_constraints.empty()) report.max_vector_residual = 0.0;

  double lam_min = std::numeric_limits<double>::infinity();
  for (const Matrix* lam : {&vars.Lambda1, &vars.Lambda2}) {
    if (lam->size() > 0) lam_min = std::min(lam_min, lam->minCoeff());
  }
  report.min_lambda_entry = std::isfinite(lam_min) ? lam_min : 0.0;
  return report;
}

}  // namespace algocert
