#include "algocert/interp.hpp"

#include <limits>

namespace algocert {

PairForm pair_form(const FunctionClass& fc) {
  const double m = fc.m, L = fc.L;
  PairForm pf;
  pf.quad.resize(4, 4);
  pf.quad << -m * L, m * L, m, -L,
              m * L, -m * L, -m, L,
              m, -m, -1.0, 1.0,
             -L, L, 1.0, -1.0;
  pf.h.resize(2);
  pf.h << 2.0 * (L - m), -2.0 * (L - m);
  return pf;
}

double qij_value(const FunctionClass& fc, const RowVec& yi, const RowVec& yj,
                 const RowVec& ui, const RowVec& uj, double fi, double fj) {
  if (yi.size() != yj.size() || ui.size() != uj.size() || yi.size() != ui.size()) {
    throw std::invalid_argument("qij_value: dimension mismatch");
  }
  const double m = fc.m, L = fc.L;
  const RowVec dy = yi - yj;
  const RowVec du = ui - uj;
  return 2.0 * (L - m) * (fi - fj) - m * L * dy.squaredNorm() +
         2.0 * dy.dot(m * ui - L * uj) - du.squaredNorm();
}

InterpCheckResult interpolation_check(const std::vector<InterpPoint>& points,
                                      const FunctionClass& fc, double tol) {
  if (points.empty()) throw std::invalid_argument("interpolation_check: empty data set");
  const auto d = points.front().y.size();
  for (const auto& p : points) {
    if (p.y.size() != d || p.u.size() != d) {
      throw std::invalid_argument("interpolation_check: inconsistent dimensions");
    }
  }

  InterpCheckResult res;
  res.min_qij = std::numeric_limits<double>::infinity();
  const int np = static_cast<int>(points.size());
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) {
      if (i == j) continue;
      const double q = qij_value(fc, points[i].y, points[j].y, points[i].u,
                                 points[j].u, points[i].f, points[j].f);
      if (q < res.min_qij) {
        res.min_qij = q;
        res.worst_i = i;
        res.worst_j = j;
      }
    }
  }
  if (np == 1) {
    res.min_qij = 0.0;
    res.worst_i = res.worst_j = 0;
  }
  res.interpolable = res.min_qij >= -tol;
  return res;
}

InterpolationMultipliers multiplier_form(const Matrix& Lambda, const FunctionClass& fc) {
  const int dim = static_cast<int>(Lambda.rows());
  if (Lambda.cols() != dim || dim < 2) {
    throw std::invalid_argument("multiplier_form: Lambda must be square, (ell+2) x (ell+2)");
  }
  if ((Lambda.array() < 0.0).any()) {
    throw std::invalid_argument("multiplier_form: Lambda must be elementwise nonnegative");
  }
  const int nsel = dim - 1;  // ell + 1 time indices; the last index is the fixed point
  const double m = fc.m, L = fc.L;

  InterpolationMultipliers out;
  out.quad = Matrix::Zero(2 * nsel, 2 * nsel);
  out.lin = Vector::Zero(nsel);

  auto selector = [&](int idx) -> Vector {
    Vector e = Vector::Zero(nsel);
    if (idx < nsel) e(idx) = 1.0;  // the star index maps to the zero vector
    return e;
  };

  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      const double w = Lambda(i, j);
      if (w == 0.0) continue;
      const Vector ei = selector(i), ej = selector(j);
      const Vector dij = ei - ej;
      const Vector mij = m * ei - L * ej;
      out.quad.topLeftCorner(nsel, nsel) -= w * m * L * (dij * dij.transpose());
      out.quad.topRightCorner(nsel, nsel) += w * (dij * mij.transpose());
      out.quad.bottomLeftCorner(nsel, nsel) += w * (mij * dij.transpose());
      out.quad.bottomRightCorner(nsel, nsel) -= w * (dij * dij.transpose());
      out.lin += 2.0 * (L - m) * w * dij;
    }
  }
  return out;
}

}  // namespace algocert
