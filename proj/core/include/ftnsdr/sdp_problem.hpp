#pragma once

#include <iosfwd>
#include <vector>

#include "ftnsdr/types.hpp"

namespace ftn::sdp {

/// Symmetric matrix stored as upper-triangle triplets (row <= col).
class SymmetricSparse {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  SymmetricSparse() = default;
  explicit SymmetricSparse(int order) : order_(order) {}

  int order() const noexcept { return order_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Adds `value` at (i, j) and (j, i). Indices may be given in either order.
  void add(int i, int j, double value);

  /// tr(A X) for symmetric X.
  double trace_product(const RMatrix& X) const;
  /// X += scale * A.
  void accumulate(RMatrix& X, double scale) const;
  RMatrix dense() const;

 private:
  int order_ = 0;
  std::vector<Entry> entries_;
};

struct LinearConstraint {
  SymmetricSparse A;
  double b = 0.0;
};

/// min tr(C X) s.t. tr(A_i X) = b_i, tr(A_j X) >= b_j, X PSD.
struct SdpProblem {
  int n = 0;
  RMatrix C;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;

  /// Throws ParameterError on shape or symmetry violations.
  void validate() const;
};

/// Plain-text sparse triplet dump. Header line "n m_eq m_ineq", then blocks
/// "C <nnz>", "EQ <b> <nnz>", "INEQ <b> <nnz>" followed by "i j value" lines
/// (upper triangle, zero-based).
void write_triplets(std::ostream& os, const SdpProblem& problem);
SdpProblem read_triplets(std::istream& is);

}  // namespace ftn::sdp
