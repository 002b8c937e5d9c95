#include "algocert/sdp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

#include "backends.hpp"

namespace algocert {

std::unique_ptr<SdpBackend> make_backend(const std::string& name) {
  if (name == "ipm") return make_ipm_backend();
  if (name == "projection") return make_projection_backend();
  throw std::invalid_argument("unknown solver backend: " + name);
}

int svec_dim(int n) { return n * (n + 1) / 2; }

Vector svec(const Matrix& A, double asym_tol) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("svec: matrix must be square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (n > 0 && (A - A.transpose()).cwiseAbs().maxCoeff() > asym_tol * scale) {
    throw std::invalid_argument("svec: matrix is not symmetric");
  }
  Vector v(svec_dim(n));
  const double rt2 = std::sqrt(2.0);
  int idx = 0;
  for (int j = 0; j < n; ++j) {
    v(idx++) = A(j, j);
    for (int i = j + 1; i < n; ++i) {
      v(idx++) = rt2 * 0.5 * (A(i, j) + A(j, i));
    }
  }
  return v;
}

Matrix smat(const Vector& v) {
  const int len = static_cast<int>(v.size());
  const int n = static_cast<int>(std::lround((std::sqrt(8.0 * len + 1.0) - 1.0) / 2.0));
  if (svec_dim(n) != len) throw std::invalid_argument("smat: length is not triangular");
  Matrix A(n, n);
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  int idx = 0;
  for (int j = 0; j < n; ++j) {
    A(j, j) = v(idx++);
    for (int i = j + 1; i < n; ++i) {
      const double w = v(idx++) * inv_rt2;
      A(i, j) = w;
      A(j, i) = w;
    }
  }
  return A;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Inaccurate: return "inaccurate";
    case SolveStatus::Failed: return "failed";
  }
  return "unknown";
}

namespace {

double block_scale(const MatrixConstraintExpr& mc) {
  return std::max(1.0, mc.constant.norm());
}

double row_scale(const VectorConstraintExpr& vc, int row) {
  double coeff_mag = 0.0;
  if (vc.coeff.cols() > 0) coeff_mag = vc.coeff.row(row).cwiseAbs().maxCoeff();
  return std::max({1.0, std::abs(vc.constant(row)), coeff_mag});
}

// How the LMI is presented to a backend. The margin mode appends a scalar t,
// shifts every certification constraint by t (in block-normalized units) and
// maximizes it: strict feasibility of the original system is then a sign
// condition on the optimum, decided robustly away from zero. The tightened
// modes instead subtract a fixed strict_margin from the constants.
enum class TranslateMode { MarginFeasibility, TightenedFeasibility, Minimize };

struct Translated {
  ConeProblem cone;
  Vector col_scale;  // backend variables are col_scale .* original
  int t_index = -1;
};

Translated translate(const LmiProblem& prob, const SolveSettings& st, TranslateMode mode) {
  const int nu = prob.layout.num_vars();
  const bool margin = (mode == TranslateMode::MarginFeasibility);
  const double eps = margin ? 0.0 : st.strict_margin;
  const int nv = nu + (margin ? 1 : 0);

  Translated tr;
  tr.t_index = margin ? nu : -1;
  ConeProblem& cp = tr.cone;
  cp.num_vars = nv;

  for (const auto& mc : prob.matrix_constraints) {
    const double s = block_scale(mc);
    const int dim = static_cast<int>(mc.constant.rows());
    PsdBlockData blk;
    blk.constant = -mc.constant / s;
    if (eps > 0.0) blk.constant -= eps * Matrix::Identity(dim, dim);
    blk.coeff.resize(nv);
    for (int k = 0; k < nu; ++k) blk.coeff[k] = mc.coeff[k] / s;
    if (margin) blk.coeff[nu] = Matrix::Identity(dim, dim);
    cp.psd.push_back(std::move(blk));
  }

  std::vector<double> consts;
  std::vector<RowVec> rows;
  for (const auto& vc : prob.vector_constraints) {
    for (int i = 0; i < vc.constant.size(); ++i) {
      const double rn = row_scale(vc, i);
      RowVec a = RowVec::Zero(nv);
      if (nu > 0) a.head(nu) = vc.coeff.row(i) / rn;
      if (margin) a(nu) = 1.0;
      consts.push_back(-vc.constant(i) / rn - eps);
      rows.push_back(a);
    }
  }
  for (int k : prob.layout.nonnegative_indices()) {
    RowVec a = RowVec::Zero(nv);
    a(k) = -1.0;
    consts.push_back(0.0);
    rows.push_back(a);
  }
  const double box = st.var_bound;
  for (int k = 0; k < nu; ++k) {
    RowVec hi = RowVec::Zero(nv);
    hi(k) = 1.0 / box;  // u_k <= box
    consts.push_back(1.0);
    rows.push_back(hi);
    RowVec lo = RowVec::Zero(nv);
    lo(k) = -1.0 / box;  // u_k >= -box
    consts.push_back(1.0);
    rows.push_back(lo);
  }
  if (margin) {
    RowVec cap = RowVec::Zero(nv);
    cap(nu) = 1.0;  // t <= 1 keeps the objective bounded
    consts.push_back(1.0);
    rows.push_back(cap);
    RowVec floor_row = RowVec::Zero(nv);
    floor_row(nu) = -1.0 / box;  // t >= -box
    consts.push_back(1.0);
    rows.push_back(floor_row);
  }
  const int nlp = static_cast<int>(rows.size());
  cp.lp_constant.resize(nlp);
  cp.lp_coeff.resize(nlp, nv);
  for (int i = 0; i < nlp; ++i) {
    cp.lp_constant(i) = consts[i];
    cp.lp_coeff.row(i) = rows[i];
  }

  cp.b = Vector::Zero(nv);
  if (mode == TranslateMode::MarginFeasibility) {
    cp.b(nu) = 1.0;
  } else if (mode == TranslateMode::Minimize) {
    if (prob.objective.size() != nu) {
      throw std::invalid_argument("solve_minimize: problem carries no objective");
    }
    cp.b.head(nu) = -prob.objective;
  }

  // One pass of column equilibration; the backend sees O(1) data throughout.
  tr.col_scale = Vector::Ones(nv);
  for (int k = 0; k < nv; ++k) {
    double ss = cp.lp_coeff.col(k).squaredNorm();
    for (const auto& blk : cp.psd) ss += blk.coeff[k].squaredNorm();
    tr.col_scale(k) = std::max(1.0, std::sqrt(ss));
  }
  for (int k = 0; k < nv; ++k) {
    const double d = tr.col_scale(k);
    if (d == 1.0) continue;
    for (auto& blk : cp.psd) blk.coeff[k] /= d;
    cp.lp_coeff.col(k) /= d;
    cp.b(k) /= d;
  }
  return tr;
}

}  // namespace

double normalized_margin(const LmiProblem& problem, const Vector& u) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& mc : problem.matrix_constraints) {
    Matrix M = mc.evaluate(u);
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    margin = std::min(margin, -es.eigenvalues().maxCoeff() / block_scale(mc));
  }
  for (const auto& vc : problem.vector_constraints) {
    const Vector v = vc.evaluate(u);
    for (int i = 0; i < v.size(); ++i) {
      margin = std::min(margin, -v(i) / row_scale(vc, i));
    }
  }
  return std::isfinite(margin) ? margin : 0.0;
}

namespace {

void attach_replay(const LmiProblem& problem, SolveReport& rep) {
  const ResidualReport rr = evaluate_residuals(problem, problem.layout.unpack(rep.u));
  rep.max_matrix_residual = rr.max_matrix_residual;
  rep.max_vector_residual = rr.max_vector_residual;
}

}  // namespace

SolveReport solve_feasibility(const LmiProblem& problem, const SolveSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  auto backend = make_backend(settings.backend);
  const bool projection = (backend->name() == "projection");
  const Translated tr = translate(
      problem, settings,
      projection ? TranslateMode::TightenedFeasibility : TranslateMode::MarginFeasibility);
  const ConeSolution sol = backend->solve(tr.cone, settings);

  SolveReport rep;
  rep.backend_name = backend->name();
  rep.iterations = sol.iterations;
  rep.solver_residual = sol.residual;
  const Vector y = sol.y.cwiseQuotient(tr.col_scale);
  rep.u = y.head(problem.layout.num_vars());
  rep.margin = normalized_margin(problem, rep.u);
  attach_replay(problem, rep);

  // Witness-first decision: the replayed margin is computed independently of
  // the backend, so a point that strictly satisfies every constraint proves
  // feasibility even if the optimizer did not formally converge. Infeasibility,
  // by contrast, is only ever declared on a converged solve.
  if (rep.margin >= 0.5 * settings.strict_margin) {
    rep.feasible = true;
    rep.status = SolveStatus::Feasible;
  } else if (sol.converged) {
    rep.feasible = false;
    rep.status = SolveStatus::Infeasible;
  } else {
    rep.feasible = false;
    rep.status = std::isfinite(sol.residual) ? SolveStatus::Inaccurate : SolveStatus::Failed;
  }
  rep.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SolveReport solve_minimize(const LmiProblem& problem, const SolveSettings& settings) {
  if (problem.objective.size() != problem.layout.num_vars()) {
    throw std::invalid_argument("solve_minimize: problem carries no objective");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveReport feas = solve_feasibility(problem, settings);
  if (!feas.feasible) return feas;
  feas.objective = problem.objective.dot(feas.u);

  auto backend = make_backend(settings.backend);
  if (backend->name() == "projection") {
    // Feasibility diagnostic only: report the bound witnessed by the margin
    // phase rather than pretending to optimize.
    return feas;
  }

  const Translated tr = translate(problem, settings, TranslateMode::Minimize);
  const ConeSolution sol = backend->solve(tr.cone, settings);
  const Vector u = sol.y.cwiseQuotient(tr.col_scale).head(problem.layout.num_vars());
  const double margin = normalized_margin(problem, u);
  // A strictly feasible point bounds the objective whether or not the
  // optimizer converged; the comparison against the margin-phase bound below
  // keeps the better of the two.
  if (margin > 0.0) {
    SolveReport rep;
    rep.backend_name = backend->name();
    rep.status = SolveStatus::Feasible;
    rep.feasible = true;
    rep.margin = margin;
    rep.objective = problem.objective.dot(u);
    rep.u = u;
    rep.iterations = sol.iterations;
    rep.solver_residual = sol.residual;
    attach_replay(problem, rep);
    rep.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Never report a worse bound than the feasibility phase already proved.
    if (feas.objective < rep.objective) return feas;
    return rep;
  }
  // The optimum was not reached, but the margin-phase point still certifies
  // a (weaker) bound, so return that rather than failing outright.
  return feas;
}

}  // namespace algocert
