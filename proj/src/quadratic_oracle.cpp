#include "algocert/quadratic_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace algocert {

CurvatureGrid CurvatureGrid::make(const FunctionClass& fc, int num_points) {
  if (num_points < 2) throw std::invalid_argument("grid needs at least two points");
  CurvatureGrid grid;
  grid.points.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    const double t = static_cast<double>(i) / (num_points - 1);
    grid.points.push_back(fc.m + t * (fc.L - fc.m));
  }
  grid.points.front() = fc.m;
  grid.points.back() = fc.L;
  return grid;
}

Matrix closed_loop(const AlgorithmRealization& alg, double q) {
  return alg.A + q * alg.B * alg.C;
}

double spectral_radius(const Matrix& M) {
  if (M.rows() == 1) return std::abs(M(0, 0));
  Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Golden-section maximization of fn on [lo, hi] down to resolution 1e-10.
double refine_max(const std::function<double(double)>& fn, double lo, double hi,
                  int max_iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < max_iters && (b - a) > 1e-10; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = fn(d);
    }
  }
  return std::max({fn(a), fn(b), fc, fd});
}

template <typename Fn>
double worst_over_grid(const Fn& fn, const CurvatureGrid& grid) {
  const auto& pts = grid.points;
  std::size_t best = 0;
  double best_val = fn(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double v = fn(pts[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = pts[best > 0 ? best - 1 : 0];
  const double hi = pts[best + 1 < pts.size() ? best + 1 : pts.size() - 1];
  if (hi <= lo) return best_val;
  return std::max(best_val, refine_max(fn, lo, hi, grid.refinement_depth));
}

}  // namespace

double worst_case_rate_quadratic(const AlgorithmRealization& alg, const FunctionClass& fc,
                                 const CurvatureGrid& grid) {
  alg.validate();
  (void)fc;
  auto rho = [&](double q) { return spectral_radius(closed_loop(alg, q)); };
  return worst_over_grid(rho, grid);
}

Matrix solve_discrete_lyapunov(const Matrix& T, const Matrix& W) {
  const int n = static_cast<int>(T.rows());
  if (T.cols() != n || W.rows() != n || W.cols() != n) {
    throw std::invalid_argument("solve_discrete_lyapunov: square same-size matrices required");
  }
  if (spectral_radius(T) >= 1.0) {
    throw std::domain_error("solve_discrete_lyapunov: spectral radius of T is >= 1");
  }
  // vec(X) - (T (x) T) vec(X) = vec(W); small n, dense Kronecker solve.
  Matrix K = Matrix::Identity(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n) -= T(i, j) * T;  // column-major vec convention
    }
  }
  Vector w(n * n);
  for (int col = 0; col < n; ++col) w.segment(col * n, n) = W.col(col);
  Vector x = K.partialPivLu().solve(w);
  Matrix X(n, n);
  for (int col = 0; col < n; ++col) X.col(col) = x.segment(col * n, n);
  X = 0.5 * (X + X.transpose()).eval();
  return X;
}

double quadratic_sensitivity(const AlgorithmRealization& alg, const FunctionClass& fc,
                             double sigma, int d, const CurvatureGrid& grid) {
  alg.validate();
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  if (sigma == 0.0) return 0.0;

  for (double q : grid.points) {
    if (spectral_radius(closed_loop(alg, q)) >= 1.0 - 1e-12) {
      std::ostringstream msg;
      msg << "quadratic_sensitivity: closed loop not stable at curvature q = " << q;
      throw std::domain_error(msg.str());
    }
  }
  (void)fc;
  const Matrix W = sigma * sigma * alg.B * alg.B.transpose();
  auto variance = [&](double q) {
    const Matrix X = solve_discrete_lyapunov(closed_loop(alg, q), W);
    return (alg.C * X * alg.C.transpose())(0, 0);
  };
  return std::sqrt(static_cast<double>(d) * worst_over_grid(variance, grid));
}

}  // namespace algocert
