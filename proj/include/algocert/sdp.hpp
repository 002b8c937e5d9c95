#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "algocert/lmi.hpp"
#include "algocert/types.hpp"

namespace algocert {

/// Symmetric vectorization, lower triangle column-major with off-diagonal
/// entries scaled by sqrt(2) so that svec(A) . svec(B) = <A, B>_F.
/// Throws std::invalid_argument if A is not square or visibly asymmetric.
Vector svec(const Matrix& A, double asym_tol = 1e-12);
Matrix smat(const Vector& v);
int svec_dim(int n);

enum class SolveStatus {
  Feasible,    // a strictly feasible (or optimal) point was found
  Infeasible,  // the solver converged and the strict-feasibility margin is absent
  Inaccurate,  // no reliable verdict; treated as "no certificate"
  Failed,      // numerical breakdown
};

std::string to_string(SolveStatus s);

struct SolveSettings {
  double tol = 1e-9;           // backend convergence tolerance (relative)
  double strict_margin = 1e-8; // required margin, relative to each block's scale
  int max_iters = 100;
  double var_bound = 1e6;      // box |u_k| <= var_bound keeps the search compact
  std::string backend = "ipm";
};

struct SolveReport {
  SolveStatus status = SolveStatus::Failed;
  bool feasible = false;
  double margin = 0.0;  // scale-normalized strict margin of the returned point
  double objective = std::numeric_limits<double>::quiet_NaN();
  Vector u;             // decision vector in the LMI layout
  int iterations = 0;
  double solver_residual = 0.0;
  // Replay of the returned point through the assembled expressions.
  double max_matrix_residual = 0.0;
  double max_vector_residual = 0.0;
  double wall_time_sec = 0.0;
  std::string backend_name;
};

/// Decide strict feasibility of expr_j(u) <= 0 (semidefinite / elementwise).
/// The margin is maximized, so a Feasible report carries a point satisfying
/// every constraint with slack at least strict_margin times its scale.
SolveReport solve_feasibility(const LmiProblem& problem, const SolveSettings& settings = {});

/// Minimize objective . u over the feasible set, tightened by strict_margin
/// so the returned point is strictly feasible despite solver tolerances.
/// Runs a feasibility phase first; an Infeasible/Inaccurate report from that
/// phase is returned unchanged.
SolveReport solve_minimize(const LmiProblem& problem, const SolveSettings& settings = {});

/// Smallest scale-normalized slack of u across all constraints of the
/// problem (positive iff u is strictly feasible). Ground truth for reports.
double normalized_margin(const LmiProblem& problem, const Vector& u);

/// Standard conic form handed to backends: maximize b . y subject to
///   C_j - sum_k y_k A_{j,k}  PSD   for each psd block,
///   lp_constant - lp_coeff y >= 0  elementwise.
struct PsdBlockData {
  Matrix constant;
  std::vector<Matrix> coeff;  // one per variable; zero matrices allowed
};

struct ConeProblem {
  int num_vars = 0;
  std::vector<PsdBlockData> psd;
  Vector lp_constant;
  Matrix lp_coeff;
  Vector b;
};

struct ConeSolution {
  bool converged = false;
  Vector y;
  int iterations = 0;
  double residual = 0.0;
};

class SdpBackend {
 public:
  virtual ~SdpBackend() = default;
  virtual std::string name() const = 0;
  virtual ConeSolution solve(const ConeProblem& problem, const SolveSettings& settings) const = 0;
};

/// Known backends: "ipm" (interior point, default; handles objectives) and
/// "projection" (alternating projections; feasibility diagnostics only).
std::unique_ptr<SdpBackend> make_backend(const std::string& name);

}  // namespace algocert
