#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "backends.hpp"

// Primal-dual interior-point method with Nesterov-Todd scaling and a
// Mehrotra-style predictor-corrector, specialized to the conic form
//   maximize b.y   s.t.   S_j = C_j - sum_k y_k A_{j,k}  PSD,
//                         s   = c   - A_lp y            >= 0.
// The cone variables of the accompanying minimization problem (X_j, x) are
// iterated alongside (y, S, s); convergence is declared on the primal and
// dual residuals and the duality gap jointly.

namespace algocert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix symmetrize(const Matrix& M) { return 0.5 * (M + M.transpose()); }

// Largest step size a with X + a*dX still in the PSD cone. Robust to X
// sitting numerically on the cone boundary: the inverse square root is formed
// from clamped eigenvalues instead of a Cholesky factor that may fail.
double alpha_max_psd(const Matrix& X, const Matrix& dX) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(X);
  const double lo = 1e-14 * (1.0 + std::abs(es.eigenvalues().maxCoeff()));
  const Matrix inv_sqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseMax(lo).cwiseSqrt().cwiseInverse().asDiagonal() *
                          es.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es_d(symmetrize(inv_sqrt * dX * inv_sqrt),
                                             Eigen::EigenvaluesOnly);
  const double lmin = es_d.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return kInf;
  return -1.0 / lmin;
}

// Pull an iterate strictly back inside the cone; roundoff in the updates can
// leave eigenvalues a hair below zero, which would zero out every later step.
void restore_interior(Matrix& X) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(X);
  const double floor = 1e-13 * (1.0 + std::abs(es.eigenvalues().maxCoeff()));
  if (es.eigenvalues().minCoeff() < floor) {
    X = es.eigenvectors() * es.eigenvalues().cwiseMax(floor).asDiagonal() *
        es.eigenvectors().transpose();
  }
}

double alpha_max_nonneg(const Vector& x, const Vector& dx) {
  double a = kInf;
  for (int i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  }
  return a;
}

// Nesterov-Todd scaling point W with W S W = X, via eigendecompositions.
// Also reports S^{-1}, needed for the centering right-hand side.
Matrix nt_scaling(const Matrix& X, const Matrix& S, Matrix& S_inv) {
  Eigen::SelfAdjointEigenSolver<Matrix> es_s(S);
  const Vector lam = es_s.eigenvalues().cwiseMax(1e-300);
  const Matrix& Q = es_s.eigenvectors();
  const Vector sqrt_lam = lam.cwiseSqrt();
  const Matrix s_half = Q * sqrt_lam.asDiagonal() * Q.transpose();
  const Matrix s_minus_half = Q * sqrt_lam.cwiseInverse().asDiagonal() * Q.transpose();
  S_inv = Q * lam.cwiseInverse().asDiagonal() * Q.transpose();

  Eigen::SelfAdjointEigenSolver<Matrix> es_t(symmetrize(s_half * X * s_half));
  const Matrix t_half = es_t.eigenvectors() *
                        es_t.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                        es_t.eigenvectors().transpose();
  return symmetrize(s_minus_half * t_half * s_minus_half);
}

struct Block {
  int dim = 0;
  std::vector<int> active;  // variables with a nonzero coefficient here
  std::vector<Matrix> A;    // coefficients for the active variables
  Matrix G;                 // svec'd coefficients, svec_dim x active.size()
  Matrix C;
};

class IpmBackend final : public SdpBackend {
 public:
  std::string name() const override { return "ipm"; }
  ConeSolution solve(const ConeProblem& cp, const SolveSettings& st) const override;
};

ConeSolution IpmBackend::solve(const ConeProblem& cp, const SolveSettings& st) const {
  const int nv = cp.num_vars;
  const int nlp = static_cast<int>(cp.lp_constant.size());

  std::vector<Block> blocks;
  double barrier_degree = nlp;
  double c_norm_sq = cp.lp_constant.squaredNorm();
  for (const auto& pb : cp.psd) {
    Block b;
    b.dim = static_cast<int>(pb.constant.rows());
    b.C = symmetrize(pb.constant);
    for (int k = 0; k < nv; ++k) {
      if (pb.coeff[k].size() > 0 && pb.coeff[k].norm() > 0.0) b.active.push_back(k);
    }
    b.G.resize(svec_dim(b.dim), static_cast<int>(b.active.size()));
    int col = 0;
    for (int k : b.active) {
      b.A.push_back(symmetrize(pb.coeff[k]));
      b.G.col(col++) = svec(b.A.back());
    }
    barrier_degree += b.dim;
    c_norm_sq += b.C.squaredNorm();
    blocks.push_back(std::move(b));
  }
  const int nblk = static_cast<int>(blocks.size());
  const double b_norm = cp.b.norm();
  const double c_norm = std::sqrt(c_norm_sq);

  // Cone iterates; the data is equilibrated, so an O(10) identity start is
  // well inside the region where the first few steps behave.
  const double init_scale = 10.0;
  std::vector<Matrix> X(nblk), S(nblk);
  for (int j = 0; j < nblk; ++j) {
    X[j] = init_scale * Matrix::Identity(blocks[j].dim, blocks[j].dim);
    S[j] = X[j];
  }
  Vector x_lp = Vector::Constant(nlp, init_scale);
  Vector s_lp = Vector::Constant(nlp, init_scale);
  Vector y = Vector::Zero(nv);

  auto apply_A = [&](const std::vector<Matrix>& Xs, const Vector& xl) -> Vector {
    Vector out = Vector::Zero(nv);
    for (int j = 0; j < nblk; ++j) {
      const Block& b = blocks[j];
      for (size_t c = 0; c < b.active.size(); ++c) {
        out(b.active[c]) += b.A[c].cwiseProduct(Xs[j]).sum();
      }
    }
    if (nlp > 0) out += cp.lp_coeff.transpose() * xl;
    return out;
  };
  auto apply_At_block = [&](const Vector& yv, int j) -> Matrix {
    const Block& b = blocks[j];
    Matrix out = Matrix::Zero(b.dim, b.dim);
    for (size_t c = 0; c < b.active.size(); ++c) out += yv(b.active[c]) * b.A[c];
    return out;
  };

  ConeSolution sol;
  sol.y = y;
  sol.residual = kInf;

  std::vector<Matrix> W(nblk), S_inv(nblk), R_d(nblk);
  std::vector<Matrix> dX(nblk), dS(nblk), dX_cor(nblk), dS_cor(nblk);
  Vector r_d_lp(nlp);
  int stalled = 0;
  double prev_step = 1.0;
  double best_residual = kInf;
  Vector best_y = y;

  for (int iter = 0; iter <= st.max_iters; ++iter) {
    const Vector r_p = cp.b - apply_A(X, x_lp);
    double dual_res_sq = 0.0;
    for (int j = 0; j < nblk; ++j) {
      R_d[j] = blocks[j].C - apply_At_block(y, j) - S[j];
      dual_res_sq += R_d[j].squaredNorm();
    }
    r_d_lp = cp.lp_constant - cp.lp_coeff * y - s_lp;
    dual_res_sq += r_d_lp.squaredNorm();

    double gap = x_lp.dot(s_lp);
    double p_obj = cp.lp_constant.dot(x_lp);
    for (int j = 0; j < nblk; ++j) {
      gap += X[j].cwiseProduct(S[j]).sum();
      p_obj += blocks[j].C.cwiseProduct(X[j]).sum();
    }
    const double d_obj = cp.b.dot(y);
    const double mu = gap / barrier_degree;

    const double rel_p = r_p.norm() / (1.0 + b_norm);
    const double rel_d = std::sqrt(dual_res_sq) / (1.0 + c_norm);
    const double rel_g = std::abs(p_obj - d_obj) / (1.0 + std::abs(p_obj) + std::abs(d_obj));
    sol.residual = std::max({rel_p, rel_d, rel_g});
    sol.iterations = iter;
    sol.y = y;
    if (sol.residual < best_residual) {
      best_residual = sol.residual;
      best_y = y;
    }
    static const bool trace = std::getenv("ALGOCERT_IPM_TRACE") != nullptr;
    if (trace) {
      std::fprintf(stderr, "ipm %3d  rp %.3e  rd %.3e  rg %.3e  mu %.3e  pobj %.6e\n",
                   iter, rel_p, rel_d, rel_g, mu, p_obj);
    }
    if (sol.residual <= st.tol) {
      sol.converged = true;
      return sol;
    }
    if (!std::isfinite(sol.residual) || !std::isfinite(mu) || mu > 1e14) {
      sol.converged = false;
      sol.residual = kInf;
      return sol;
    }
    if (iter == st.max_iters) break;  // final iterate checked, no further step

    for (int j = 0; j < nblk; ++j) W[j] = nt_scaling(X[j], S[j], S_inv[j]);
    const Vector w2_lp = x_lp.cwiseQuotient(s_lp);

    // Schur complement M_kl = sum_j <A_k, W A_l W> + sum_i w2_i a_ik a_il.
    Matrix M = Matrix::Zero(nv, nv);
    for (int j = 0; j < nblk; ++j) {
      const Block& b = blocks[j];
      const int na = static_cast<int>(b.active.size());
      Matrix Gt(b.G.rows(), na);
      for (int c = 0; c < na; ++c) {
        Gt.col(c) = svec(symmetrize(W[j] * b.A[c] * W[j]));
      }
      const Matrix M_sub = symmetrize(b.G.transpose() * Gt);
      for (int c = 0; c < na; ++c) {
        for (int r = 0; r < na; ++r) {
          M(b.active[r], b.active[c]) += M_sub(r, c);
        }
      }
    }
    if (nlp > 0) {
      M += cp.lp_coeff.transpose() * w2_lp.asDiagonal() * cp.lp_coeff;
    }

    Eigen::LLT<Matrix> llt(M);
    Eigen::LDLT<Matrix> ldlt;
    bool use_ldlt = false;
    if (llt.info() != Eigen::Success) {
      double ridge = 1e-12 * (1.0 + M.trace() / nv);
      for (int attempt = 0; attempt < 5 && llt.info() != Eigen::Success; ++attempt) {
        llt.compute(M + ridge * Matrix::Identity(nv, nv));
        ridge *= 100.0;
      }
      if (llt.info() != Eigen::Success) {
        ldlt.compute(M + 1e-10 * M.trace() / nv * Matrix::Identity(nv, nv));
        if (ldlt.info() != Eigen::Success) {
          sol.converged = false;
          return sol;
        }
        use_ldlt = true;
      }
    }
    auto solve_normal = [&](const Vector& rhs) -> Vector {
      // One step of iterative refinement against the unridged matrix keeps
      // the directions usable as M turns ill-conditioned near the optimum.
      Vector dy = use_ldlt ? Vector(ldlt.solve(rhs)) : Vector(llt.solve(rhs));
      const Vector resid = rhs - M * dy;
      dy += use_ldlt ? Vector(ldlt.solve(resid)) : Vector(llt.solve(resid));
      return dy;
    };

    // Shared direction solve: given the centering targets R_c (per cone),
    // produce (dy, dS, dX) for the current residuals.
    auto direction = [&](const std::vector<Matrix>& R_c, const Vector& r_c_lp,
                         std::vector<Matrix>& dX_out, Vector& dx_lp_out,
                         std::vector<Matrix>& dS_out, Vector& ds_lp_out) -> Vector {
      std::vector<Matrix> WRW(nblk);
      for (int j = 0; j < nblk; ++j) WRW[j] = symmetrize(W[j] * R_d[j] * W[j]);
      const Vector rhs =
          r_p - apply_A(R_c, r_c_lp) + apply_A(WRW, w2_lp.cwiseProduct(r_d_lp));
      const Vector dy = solve_normal(rhs);
      for (int j = 0; j < nblk; ++j) {
        dS_out[j] = R_d[j] - apply_At_block(dy, j);
        dX_out[j] = symmetrize(R_c[j] - W[j] * dS_out[j] * W[j]);
      }
      ds_lp_out = r_d_lp - cp.lp_coeff * dy;
      dx_lp_out = r_c_lp - w2_lp.cwiseProduct(ds_lp_out);
      return dy;
    };

    // Predictor: pure Newton step toward the complementarity target 0.
    std::vector<Matrix> R_c(nblk);
    for (int j = 0; j < nblk; ++j) R_c[j] = -X[j];
    Vector dx_lp(nlp), ds_lp(nlp);
    direction(R_c, -x_lp, dX, dx_lp, dS, ds_lp);

    double a_p = 1.0, a_d = 1.0;
    for (int j = 0; j < nblk; ++j) {
      a_p = std::min(a_p, alpha_max_psd(X[j], dX[j]));
      a_d = std::min(a_d, alpha_max_psd(S[j], dS[j]));
    }
    a_p = std::min(a_p, alpha_max_nonneg(x_lp, dx_lp));
    a_d = std::min(a_d, alpha_max_nonneg(s_lp, ds_lp));

    double gap_aff = (x_lp + a_p * dx_lp).dot(s_lp + a_d * ds_lp);
    for (int j = 0; j < nblk; ++j) {
      gap_aff += (X[j] + a_p * dX[j]).cwiseProduct(S[j] + a_d * dS[j]).sum();
    }
    const double mu_aff = std::max(gap_aff, 0.0) / barrier_degree;
    const double ratio = mu > 0.0 ? mu_aff / mu : 0.0;
    // Extra centering whenever the previous iteration made little progress;
    // otherwise the aggressive Mehrotra exponent can keep producing steps that
    // jam against the boundary.
    const double sigma_floor = prev_step < 0.1 ? 0.5 : 0.0;
    const double sigma = std::clamp(ratio * ratio * ratio, sigma_floor, 1.0);

    // Corrector: recenter toward sigma*mu and absorb the second-order error
    // of the predictor (the dX dS cross term), reusing scaling and factors.
    for (int j = 0; j < nblk; ++j) {
      const Matrix cross = dX[j] * dS[j] * S_inv[j];
      R_c[j] = sigma * mu * S_inv[j] - X[j] - 0.5 * (cross + cross.transpose());
    }
    Vector dx_lp_cor(nlp), ds_lp_cor(nlp);
    const Vector r_c_lp = (sigma * mu) * s_lp.cwiseInverse() - x_lp -
                          dx_lp.cwiseProduct(ds_lp).cwiseQuotient(s_lp);
    const Vector dy = direction(R_c, r_c_lp, dX_cor, dx_lp_cor, dS_cor, ds_lp_cor);

    const double tau = 0.98;
    double step_p = kInf, step_d = kInf;
    for (int j = 0; j < nblk; ++j) {
      step_p = std::min(step_p, alpha_max_psd(X[j], dX_cor[j]));
      step_d = std::min(step_d, alpha_max_psd(S[j], dS_cor[j]));
    }
    step_p = std::min(1.0, tau * std::min(step_p, alpha_max_nonneg(x_lp, dx_lp_cor)));
    step_d = std::min(1.0, tau * std::min(step_d, alpha_max_nonneg(s_lp, ds_lp_cor)));

    for (int j = 0; j < nblk; ++j) {
      X[j] = symmetrize(X[j] + step_p * dX_cor[j]);
      S[j] = symmetrize(S[j] + step_d * dS_cor[j]);
      restore_interior(X[j]);
      restore_interior(S[j]);
    }
    x_lp = (x_lp + step_p * dx_lp_cor).cwiseMax(1e-300);
    s_lp = (s_lp + step_d * ds_lp_cor).cwiseMax(1e-300);
    y += step_d * dy;
    prev_step = std::min(step_p, step_d);

    if (std::max(step_p, step_d) < 1e-10) {
      if (++stalled >= 5) break;  // jammed against the boundary, give up
    } else {
      stalled = 0;
    }
  }

  sol.converged = false;
  sol.y = best_y;
  sol.residual = best_residual;
  return sol;
}

}  // namespace

std::unique_ptr<SdpBackend> make_ipm_backend() {
  return std::make_unique<IpmBackend>();
}

}  // namespace algocert
