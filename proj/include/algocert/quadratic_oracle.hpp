#pragma once

#include <vector>

#include "algocert/algorithm.hpp"
#include "algocert/types.hpp"

namespace algocert {

/// Sorted curvature samples in [m, L], endpoints always included. Used to
/// locate the worst quadratic mode by dense evaluation plus local refinement.
struct CurvatureGrid {
  std::vector<double> points;
  int refinement_depth = 60;

  static CurvatureGrid make(const FunctionClass& fc, int num_points = 2001);
};

/// Per-mode closed loop A + q B C for a quadratic eigenmode with curvature q.
Matrix closed_loop(const AlgorithmRealization& alg, double q);

double spectral_radius(const Matrix& M);

/// Worst-case geometric decay factor over quadratics with Hessian spectrum in
/// [m, L]: max over q of the spectral radius of the per-mode closed loop,
/// refined around the grid argmax by golden-section search.
double worst_case_rate_quadratic(const AlgorithmRealization& alg, const FunctionClass& fc,
                                 const CurvatureGrid& grid);

/// Solve X = T X T^T + W for symmetric PSD W and Schur-stable T.
/// Throws std::domain_error when the spectral radius of T is >= 1.
Matrix solve_discrete_lyapunov(const Matrix& T, const Matrix& W);

/// Exact steady-state noise sensitivity on the quadratic subclass: for each
/// curvature q the per-mode output variance is C X(q) C^T with
/// X = (A+qBC) X (A+qBC)^T + sigma^2 B B^T; the worst-case Hessian places all
/// d eigenvalues at the maximizing q, giving sqrt(d * max_q variance).
/// Throws std::domain_error naming q when the loop is not stable on [m, L].
double quadratic_sensitivity(const AlgorithmRealization& alg, const FunctionClass& fc,
                             double sigma, int d, const CurvatureGrid& grid);

}  // namespace algocert
