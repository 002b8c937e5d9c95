#pragma once

#include "algocert/algorithm.hpp"
#include "algocert/types.hpp"

namespace algocert {

/// Truncation matrices of size ell x (ell+1) acting on stacked histories
/// (newest entry first). drop_oldest keeps rows 1..ell of a stack, drop_newest
/// keeps rows 2..ell+1. Both are empty (0 x 1) when ell = 0.
struct TruncationPair {
  Matrix drop_oldest;  // [I_ell | 0]
  Matrix drop_newest;  // [0 | I_ell]
};

TruncationPair truncation_matrices(int ell);

/// The algorithm dynamics augmented with the ell most recent inputs and
/// outputs. State ordering: [xi - xi* ; past outputs y_{k-1..k-ell} - y* ;
/// past inputs u_{k-1..k-ell}]. All signals are stored relative to the fixed
/// point. The combined output stacks [y_k..y_{k-ell}; u_k..u_{k-ell}].
///
/// A: (n+2ell) x (n+2ell)   state transition
/// B: (n+2ell) x 1          gradient input
/// H: (n+2ell) x 1          noise input
/// C: 2(ell+1) x (n+2ell)   stacked outputs from the state
/// D: 2(ell+1) x 1          stacked outputs from the current input
///
/// The projections recover the base signals from z = (x, u):
/// state_proj z = xi - xi*, output_proj z = y - y*, input_proj z = u.
struct LiftedSystem {
  int ell = 0;
  int n = 0;
  Matrix A;
  Matrix B;
  Matrix H;
  Matrix C;
  Matrix D;
  Matrix state_proj;   // n x (n+2ell+1)
  Matrix output_proj;  // 1 x (n+2ell+1)
  Matrix input_proj;   // 1 x (n+2ell+1)

  int state_dim() const { return n + 2 * ell; }
  int io_dim() const { return 2 * (ell + 1); }
};

/// Assemble the lifted system for memory length ell >= 0. At ell = 0 the
/// lifted matrices coincide with the base realization.
LiftedSystem build_lifted(const AlgorithmRealization& alg, int ell);

}  // namespace algocert
