#include "ftnsdr/lifted_cost.hpp"

namespace ftn {

std::string to_string(CostOrigin o) {
  switch (o) {
    case CostOrigin::PskWhitened: return "psk-whitened";
    case CostOrigin::QamWhitened: return "qam-whitened";
    case CostOrigin::QamColored: return "qam-colored";
  }
  return "unknown";
}

RMatrix real_embedding(const CMatrix& B) {
  const auto r = B.rows();
  const auto c = B.cols();
  RMatrix X(2 * r, 2 * c);
  X.topLeftCorner(r, c) = B.real();
  X.topRightCorner(r, c) = -B.imag();
  X.bottomLeftCorner(r, c) = B.imag();
  X.bottomRightCorner(r, c) = B.real();
  return X;
}

CMatrix hermitian_from_embedding(const RMatrix& X) {
  const auto n = X.rows() / 2;
  const RMatrix re = 0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
  CMatrix B(n, n);
  B.real() = re;
  B.imag() = im;
  return B;
}

RVector real_stack(const CVector& x) {
  RVector r(2 * x.size());
  r << x.real(), x.imag();
  return r;
}

CVector complex_unstack(const RVector& x) {
  const auto n = x.size() / 2;
  CVector c(n);
  c.real() = x.head(n);
  c.imag() = x.segment(n, n);
  return c;
}

RMatrix block_diag2(const RMatrix& A) {
  RMatrix B = RMatrix::Zero(2 * A.rows(), 2 * A.cols());
  B.topLeftCorner(A.rows(), A.cols()) = A;
  B.bottomRightCorner(A.rows(), A.cols()) = A;
  return B;
}

}  // namespace ftn
