#include "ftnsdr/mlse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ftnsdr/errors.hpp"

namespace ftn {

double residual_norm2(const CVector& y, const CMatrix& H, const CVector& a) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    cplx r = y[i];
    for (Eigen::Index j = 0; j < H.cols(); ++j) r -= H(i, j) * a[j];
    total += std::norm(r);
  }
  return total;
}

namespace {

// Branch and bound over the triangular system ||z - R a||^2, deepest index first.
class Search {
 public:
  Search(const CVector& y, const CMatrix& H, const std::vector<cplx>& alphabet)
      : y_(y), H_(H), alphabet_(alphabet), n_(static_cast<int>(H.cols())) {
    Eigen::HouseholderQR<CMatrix> qr(H);
    R_ = qr.matrixQR().topRows(n_).triangularView<Eigen::Upper>();
    z_ = (qr.householderQ().adjoint() * y).head(n_);
    idx_.assign(static_cast<std::size_t>(n_), 0);
    a_ = CVector::Zero(n_);
  }

  MlseResult run() {
    descend(n_ - 1, 0.0);
    MlseResult out;
    out.indices = best_idx_;
    out.a = CVector(n_);
    for (int k = 0; k < n_; ++k) out.a[k] = alphabet_[static_cast<std::size_t>(best_idx_[static_cast<std::size_t>(k)])];
    out.objective = best_;
    out.leaves_visited = leaves_;
    return out;
  }

 private:
  double bound() const { return best_ + 1e-9 * (1.0 + best_); }

  void descend(int k, double partial) {
    if (k < 0) {
      ++leaves_;
      const double obj = residual_norm2(y_, H_, a_);
      if (obj < best_ || (obj == best_ && idx_ < best_idx_)) {
        best_ = obj;
        best_idx_ = idx_;
      }
      return;
    }
    cplx centre = z_[k];
    for (int j = k + 1; j < n_; ++j) centre -= R_(k, j) * a_[j];
    const int M = static_cast<int>(alphabet_.size());
    std::vector<std::pair<double, int>> order(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) order[static_cast<std::size_t>(m)] = {std::norm(centre - R_(k, k) * alphabet_[static_cast<std::size_t>(m)]), m};
    std::sort(order.begin(), order.end());
    for (const auto& [inc, m] : order) {
      const double cost = partial + inc;
      if (cost > bound()) break;
      idx_[static_cast<std::size_t>(k)] = m;
      a_[k] = alphabet_[static_cast<std::size_t>(m)];
      descend(k - 1, cost);
    }
  }

  const CVector& y_;
  const CMatrix& H_;
  const std::vector<cplx>& alphabet_;
  int n_;
  CMatrix R_;
  CVector z_;
  std::vector<int> idx_;
  CVector a_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_idx_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

MlseResult mlse_exhaustive(const CVector& y, const CMatrix& H, const std::vector<cplx>& alphabet) {
  if (alphabet.empty()) throw ParameterError("mlse_exhaustive: empty alphabet");
  if (H.cols() == 0 || H.rows() < H.cols() || y.size() != H.rows())
    throw ParameterError("mlse_exhaustive: channel and observation shapes disagree");
  const double space = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(H.cols()));
  if (space > kMlseSearchGuard) throw SizeError("mlse_exhaustive: search space exceeds the 2^30 guard");
  return Search(y, H, alphabet).run();
}

}  // namespace ftn
