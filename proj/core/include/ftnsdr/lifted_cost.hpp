#pragma once

#include <string>

#include "ftnsdr/types.hpp"

namespace ftn {

enum class CostOrigin { PskWhitened, QamWhitened, QamColored };

std::string to_string(CostOrigin o);

/// Cost of the lifted detection problem, objective = psi^T theta psi.
///
/// `theta` is always real symmetric. For PSK it is the real embedding
/// 1/2 [[Re T, -Im T], [Im T, Re T]] of the complex cost `theta_complex`
/// (order 2(n+1)); for 16-QAM it has order n+1 with n = 2N real-stacked
/// entries. `offset` is the bottom-right scalar of the unembedded cost; it
/// shifts every candidate equally.
///
/// For whitened origins `channel` and `observation` hold the complex model
/// y = H a + noise, so that candidate objectives equal ||y - H a||^2.
struct LiftedCost {
  RMatrix theta;
  CMatrix theta_complex;
  int n = 0;
  CostOrigin origin = CostOrigin::PskWhitened;
  double offset = 0.0;

  CMatrix channel;
  CVector observation;

  bool whitened() const { return origin != CostOrigin::QamColored; }
};

/// [[Re B, -Im B], [Im B, Re B]].
RMatrix real_embedding(const CMatrix& B);
/// Inverse of real_embedding after averaging the two copies.
CMatrix hermitian_from_embedding(const RMatrix& X);

/// [Re x; Im x].
RVector real_stack(const CVector& x);
CVector complex_unstack(const RVector& x);
/// blkdiag(A, A).
RMatrix block_diag2(const RMatrix& A);

}  // namespace ftn
