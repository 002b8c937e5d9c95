#include "algocert/lifting.hpp"

namespace algocert {

TruncationPair truncation_matrices(int ell) {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  TruncationPair tp;
  tp.drop_oldest = Matrix::Zero(ell, ell + 1);
  tp.drop_newest = Matrix::Zero(ell, ell + 1);
  tp.drop_oldest.leftCols(ell) = Matrix::Identity(ell, ell);
  tp.drop_newest.rightCols(ell) = Matrix::Identity(ell, ell);
  return tp;
}

LiftedSystem build_lifted(const AlgorithmRealization& alg, int ell) {
  alg.validate();
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");

  const int n = alg.n;
  const auto [Zp, Z] = truncation_matrices(ell);
  Vector e1 = Vector::Zero(ell + 1);
  e1(0) = 1.0;
  const Matrix shift = Zp * Z.transpose();  // ell x ell, ones on the superdiagonal

  LiftedSystem ls;
  ls.ell = ell;
  ls.n = n;
  const int ns = n + 2 * ell;

  ls.A = Matrix::Zero(ns, ns);
  ls.A.topLeftCorner(n, n) = alg.A;
  ls.A.block(n, 0, ell, n) = (Zp * e1) * alg.C;
  ls.A.block(n, n, ell, ell) = shift;
  ls.A.block(n + ell, n + ell, ell, ell) = shift;

  ls.B = Matrix::Zero(ns, 1);
  ls.B.topRows(n) = alg.B;
  ls.B.bottomRows(ell) = Zp * e1;

  ls.H = Matrix::Zero(ns, 1);
  ls.H.topRows(n) = alg.B;

  ls.C = Matrix::Zero(2 * (ell + 1), ns);
  ls.C.block(0, 0, ell + 1, n) = e1 * alg.C;
  ls.C.block(0, n, ell + 1, ell) = Z.transpose();
  ls.C.block(ell + 1, n + ell, ell + 1, ell) = Z.transpose();

  ls.D = Matrix::Zero(2 * (ell + 1), 1);
  ls.D(ell + 1, 0) = 1.0;

  ls.state_proj = Matrix::Zero(n, ns + 1);
  ls.state_proj.leftCols(n) = Matrix::Identity(n, n);
  ls.output_proj = Matrix::Zero(1, ns + 1);
  ls.output_proj.leftCols(n) = alg.C;
  ls.input_proj = Matrix::Zero(1, ns + 1);
  ls.input_proj(0, ns) = 1.0;

  return ls;
}

}  // namespace algocert
