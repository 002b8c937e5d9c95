#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace algocert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVec = Eigen::RowVectorXd;

/// The function class F_{m,L}: m-strongly-convex functions with L-Lipschitz
/// gradients. Quadratics with Hessian spectrum in [m, L] are the exactly
/// analyzable subclass.
struct FunctionClass {
  double m;
  double L;

  FunctionClass(double m_, double L_) : m(m_), L(L_) {
    if (!(m > 0.0) || !(L >= m)) {
      throw std::invalid_argument("FunctionClass requires 0 < m <= L");
    }
  }

  double kappa() const { return L / m; }

  /// Construct from a condition number, normalizing m = 1.
  static FunctionClass from_kappa(double kappa) { return FunctionClass(1.0, kappa); }
};

}  // namespace algocert
