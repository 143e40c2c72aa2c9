#pragma once

#include <cstdint>
#include <vector>

#include "ftnsdr/types.hpp"

namespace ftn {

struct MlseResult {
  std::vector<int> indices;
  CVector a;
  double objective = 0.0;  ///< residual_norm2(y, H, a)
  std::uint64_t leaves_visited = 0;
};

/// Largest |alphabet|^N accepted by mlse_exhaustive.
inline constexpr double kMlseSearchGuard = 1073741824.0;  // 2^30

/// ||y - H a||^2 accumulated row by row in index order. Every objective that
/// is compared against the MLSE optimum goes through this function.
double residual_norm2(const CVector& y, const CMatrix& H, const CVector& a);

/// Global minimiser of ||y - H a||^2 over alphabet^N.
///
/// Exact depth-first branch and bound on the QR-triangularised problem; ties
/// go to the lexicographically smallest index vector. Throws SizeError when
/// |alphabet|^N exceeds kMlseSearchGuard.
MlseResult mlse_exhaustive(const CVector& y, const CMatrix& H, const std::vector<cplx>& alphabet);

}  // namespace ftn
