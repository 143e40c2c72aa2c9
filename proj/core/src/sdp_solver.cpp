#include "ftnsdr/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ftnsdr/errors.hpp"

namespace ftn::sdp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kStepFraction = 0.98;
constexpr double kRegularization = 1e-10;
constexpr double kInfeasibleScale = 1e8;
constexpr double kInfeasibleRatio = 1e-6;
constexpr int kBacktrackSteps = 60;
constexpr int kRefinementSteps = 2;

void symmetrize(RMatrix& A) { A = (0.5 * (A + A.transpose())).eval(); }

struct Iterate {
  RMatrix X;
  RVector s;  // inequality slacks
  RVector y;  // equalities first, then inequalities
  RMatrix Z;
  RVector z;  // duals of the slacks
};

struct Scaling {
  RMatrix G;     // W = G G^T
  RMatrix Ginv;
  RMatrix W;
  RVector d;     // eigenvalues of the scaled point
  RVector w;     // LP-block scaling sqrt(s/z)
  RVector ds;    // sqrt(s z)
};

struct Direction {
  RMatrix dX;
  RVector ds;
  RVector dy;
  RMatrix dZ;
  RVector dz;
};

class Solver {
 public:
  Solver(const SdpProblem& p, const SolverOptions& o)
      : p_(p), opts_(o), n_(p.n), me_(static_cast<int>(p.equalities.size())),
        mi_(static_cast<int>(p.inequalities.size())), m_(me_ + mi_) {
    cons_.reserve(static_cast<std::size_t>(m_));
    b_.resize(m_);
    for (int i = 0; i < me_; ++i) {
      cons_.push_back(&p.equalities[static_cast<std::size_t>(i)].A);
      b_[i] = p.equalities[static_cast<std::size_t>(i)].b;
    }
    for (int j = 0; j < mi_; ++j) {
      cons_.push_back(&p.inequalities[static_cast<std::size_t>(j)].A);
      b_[me_ + j] = p.inequalities[static_cast<std::size_t>(j)].b;
    }
    c_norm_ = p.C.norm();
    b_norm_ = b_.norm();
  }

  SdpSolution run() {
    Iterate it = initial_point();
    SdpSolution out;
    out.status = SolveStatus::MaxIterations;
    const double nu = static_cast<double>(n_ + mi_);

    for (int k = 0; k <= opts_.max_iter; ++k) {
      const RVector rp = primal_residual(it);
      RMatrix Rd;
      RVector rds;
      dual_residual(it, Rd, rds);
      const double pobj = p_.C.cwiseProduct(it.X).sum();
      const double dobj = b_.dot(it.y);
      const double pres = rp.norm() / (1.0 + b_norm_);
      const double dres = std::sqrt(Rd.squaredNorm() + rds.squaredNorm()) / (1.0 + c_norm_);
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      out.iterations = k;
      store(it, out);

      if (!it.X.allFinite() || !it.Z.allFinite() || !std::isfinite(dobj)) {
        out.status = SolveStatus::NumericalFailure;
        return out;
      }
      if (pres <= opts_.tol && dres <= opts_.tol && gap <= opts_.tol) {
        out.status = SolveStatus::Optimal;
        return out;
      }
      if (infeasible(it, dobj, pobj)) {
        out.status = SolveStatus::Infeasible;
        return out;
      }
      if (k == opts_.max_iter) break;

      const double mu = (it.X.cwiseProduct(it.Z).sum() + it.s.dot(it.z)) / nu;
      Scaling sc;
      if (!scaling(it, sc)) {
        out.status = SolveStatus::NumericalFailure;
        return out;
      }
      Eigen::LDLT<RMatrix> ldlt;
      Eigen::LLT<RMatrix> llt;
      bool use_llt = true;
      RMatrix M;
      if (!factor_schur(sc, M, llt, ldlt, use_llt)) {
        out.status = SolveStatus::NumericalFailure;
        return out;
      }
      auto solve_m = [&](const RVector& r) -> RVector {
        auto once = [&](const RVector& v) -> RVector { return use_llt ? RVector(llt.solve(v)) : RVector(ldlt.solve(v)); };
        RVector x = once(r);
        for (int j = 0; j < kRefinementSteps; ++j) x += once(r - M * x);
        return x;
      };

      // predictor
      RMatrix corr = RMatrix::Zero(n_, n_);
      RVector corr_s = RVector::Zero(mi_);
      Direction aff = direction(it, sc, rp, Rd, rds, 0.0, corr, corr_s, solve_m);
      double ap = 0.0;
      double ad = 0.0;
      step_lengths(it, sc, aff, ap, ad);
      const double mu_aff = ((it.X + ap * aff.dX).cwiseProduct(it.Z + ad * aff.dZ).sum() +
                             (it.s + ap * aff.ds).dot(it.z + ad * aff.dz)) / nu;
      const double sigma = std::min(1.0, std::pow(std::max(mu_aff, 0.0) / mu, 3.0));

      // corrector
      const RMatrix dXs = sc.Ginv * aff.dX * sc.Ginv.transpose();
      const RMatrix dZs = sc.G.transpose() * aff.dZ * sc.G;
      corr = 0.5 * (dXs * dZs + dZs * dXs);
      corr_s = aff.ds.cwiseProduct(aff.dz);
      Direction dir = direction(it, sc, rp, Rd, rds, sigma * mu, corr, corr_s, solve_m);
      step_lengths(it, sc, dir, ap, ad);
      if (!dir.dX.allFinite() || !dir.dZ.allFinite() || !dir.dy.allFinite()) {
        out.status = SolveStatus::NumericalFailure;
        return out;
      }

      ap = backtrack(it.X, dir.dX, ap);
      ad = backtrack(it.Z, dir.dZ, ad);
      if (ap <= 0.0 || ad <= 0.0) {
        out.status = SolveStatus::NumericalFailure;
        return out;
      }

      it.X += ap * dir.dX;
      it.s += ap * dir.ds;
      it.y += ad * dir.dy;
      it.Z += ad * dir.dZ;
      it.z += ad * dir.dz;
      symmetrize(it.X);
      symmetrize(it.Z);
    }
    out.status = SolveStatus::MaxIterations;
    return out;
  }

 private:
  Iterate initial_point() const {
    double bmax = 0.0;
    for (int i = 0; i < m_; ++i) bmax = std::max(bmax, std::abs(b_[i]));
    const double xi = 1.0 + bmax;
    Iterate it;
    it.X = xi * RMatrix::Identity(n_, n_);
    it.s = RVector::Constant(mi_, xi);
    it.y = RVector::Zero(m_);
    it.Z = xi * RMatrix::Identity(n_, n_);
    it.z = RVector::Constant(mi_, xi);
    return it;
  }

  RVector apply_a(const RMatrix& X, const RVector& s) const {
    RVector r(m_);
    for (int i = 0; i < m_; ++i) r[i] = cons_[static_cast<std::size_t>(i)]->trace_product(X);
    for (int j = 0; j < mi_; ++j) r[me_ + j] -= s[j];
    return r;
  }

  RMatrix apply_at(const RVector& y) const {
    RMatrix S = RMatrix::Zero(n_, n_);
    for (int i = 0; i < m_; ++i) cons_[static_cast<std::size_t>(i)]->accumulate(S, y[i]);
    return S;
  }

  RVector primal_residual(const Iterate& it) const { return b_ - apply_a(it.X, it.s); }

  void dual_residual(const Iterate& it, RMatrix& Rd, RVector& rds) const {
    Rd = p_.C - it.Z - apply_at(it.y);
    rds = it.y.tail(mi_) - it.z;
  }

  bool infeasible(const Iterate& it, double dobj, double pobj) const {
    if (dobj > kInfeasibleScale) {
      const double r = std::sqrt((apply_at(it.y) + it.Z).squaredNorm() + (it.y.tail(mi_) - it.z).squaredNorm());
      if (r / dobj < kInfeasibleRatio) return true;
    }
    if (-pobj > kInfeasibleScale) {
      const RVector ax = apply_a(it.X, it.s);
      if (ax.norm() / -pobj < kInfeasibleRatio) return true;
    }
    return false;
  }

  // NT scaling from the SVD of L_Z^T L_X, which keeps the small singular
  // values accurate when X and Z are both close to singular.
  bool scaling(const Iterate& it, Scaling& sc) const {
    Eigen::LLT<RMatrix> lx(it.X);
    Eigen::LLT<RMatrix> lz(it.Z);
    if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
    const RMatrix Lx = lx.matrixL();
    const RMatrix Lz = lz.matrixL();
    Eigen::JacobiSVD<RMatrix> svd(Lz.transpose() * Lx, Eigen::ComputeFullV);
    const RVector sv = svd.singularValues();
    if (!sv.allFinite() || sv.minCoeff() <= 0.0) return false;
    const RVector q = sv.cwiseSqrt().cwiseInverse();
    const RMatrix& V = svd.matrixV();
    sc.G = Lx * V * q.asDiagonal();
    const RMatrix Linv = Lx.triangularView<Eigen::Lower>().solve(RMatrix::Identity(n_, n_));
    sc.Ginv = q.cwiseInverse().asDiagonal() * V.transpose() * Linv;
    sc.W = sc.G * sc.G.transpose();
    symmetrize(sc.W);
    sc.d = sv;
    if ((it.s.array() <= 0.0).any() || (it.z.array() <= 0.0).any()) return false;
    sc.w = (it.s.array() / it.z.array()).sqrt();
    sc.ds = (it.s.array() * it.z.array()).sqrt();
    return true;
  }

  // tr(A_i W A_j W) from the triplets of both constraints.
  double schur_entry(const SymmetricSparse& Ai, const SymmetricSparse& Aj, const RMatrix& W) const {
    double total = 0.0;
    for (const auto& e : Ai.entries()) {
      const int r = e.row;
      const int c = e.col;
      double brc = 0.0;  // (W A_j W)(r, c)
      for (const auto& f : Aj.entries()) {
        const int p = f.row;
        const int q = f.col;
        double v = W(r, p) * W(q, c);
        if (p != q) v += W(r, q) * W(p, c);
        brc += f.value * v;
      }
      total += r == c ? e.value * brc : 2.0 * e.value * brc;
    }
    return total;
  }

  bool factor_schur(const Scaling& sc, RMatrix& M, Eigen::LLT<RMatrix>& llt, Eigen::LDLT<RMatrix>& ldlt,
                    bool& use_llt) const {
    M.resize(m_, m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = i; j < m_; ++j) {
        const double v = schur_entry(*cons_[static_cast<std::size_t>(i)], *cons_[static_cast<std::size_t>(j)], sc.W);
        M(i, j) = v;
        M(j, i) = v;
      }
    }
    for (int j = 0; j < mi_; ++j) M(me_ + j, me_ + j) += sc.w[j] * sc.w[j];
    if (!M.allFinite()) return false;
    llt.compute(M);
    if (llt.info() == Eigen::Success) {
      use_llt = true;
      return true;
    }
    const double scale = m_ > 0 ? std::max(M.diagonal().cwiseAbs().maxCoeff(), 1e-300) : 1.0;
    RMatrix Mreg = M;
    Mreg.diagonal().array() += kRegularization * scale;
    llt.compute(Mreg);
    if (llt.info() == Eigen::Success) {
      use_llt = true;
      return true;
    }
    ldlt.compute(Mreg);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      use_llt = false;
      return true;
    }
    return false;
  }

  template <class SolveM>
  Direction direction(const Iterate& it, const Scaling& sc, const RVector& rp, const RMatrix& Rd, const RVector& rds,
                      double target, const RMatrix& corr, const RVector& corr_s, SolveM&& solve_m) const {
    // scaled complementarity right-hand side
    RMatrix rhs = -corr;
    for (int i = 0; i < n_; ++i) rhs(i, i) += target - sc.d[i] * sc.d[i];
    RMatrix Rc(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) Rc(i, j) = rhs(i, j) * 2.0 / (sc.d[i] + sc.d[j]);
    const RMatrix Rx = sc.G * Rc * sc.G.transpose();
    const RVector rcs = (RVector::Constant(mi_, target) - it.s.cwiseProduct(it.z) - corr_s).cwiseQuotient(sc.ds);
    const RVector rs = sc.w.cwiseProduct(rcs);
    const RVector w2 = sc.w.cwiseProduct(sc.w);

    const RMatrix WRdW = sc.W * Rd * sc.W;
    RVector rhs_y(m_);
    for (int i = 0; i < m_; ++i) rhs_y[i] = rp[i] - cons_[static_cast<std::size_t>(i)]->trace_product(Rx - WRdW);
    for (int j = 0; j < mi_; ++j) rhs_y[me_ + j] += rs[j] - w2[j] * rds[j];

    Direction d;
    d.dy = solve_m(rhs_y);
    d.dZ = Rd - apply_at(d.dy);
    symmetrize(d.dZ);
    d.dX = Rx - sc.W * d.dZ * sc.W;
    symmetrize(d.dX);
    d.dz = rds + d.dy.tail(mi_);
    // slack steps taken from the primal equations so they hold to rounding
    d.ds.resize(mi_);
    for (int j = 0; j < mi_; ++j) d.ds[j] = cons_[static_cast<std::size_t>(me_ + j)]->trace_product(d.dX) - rp[me_ + j];
    return d;
  }

  static double max_step_psd(const RVector& d, const RMatrix& dS) {
    const RVector isq = d.cwiseSqrt().cwiseInverse();
    const RMatrix T = isq.asDiagonal() * dS * isq.asDiagonal();
    const double lmin = Eigen::SelfAdjointEigenSolver<RMatrix>(0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
  }

  static double max_step_lp(const RVector& v, const RVector& dv) {
    double a = std::numeric_limits<double>::infinity();
    for (int k = 0; k < v.size(); ++k)
      if (dv[k] < 0.0) a = std::min(a, -v[k] / dv[k]);
    return a;
  }

  // Shrinks a step until the new point admits a Cholesky factor; the scaled
  // eigenvalue test can be optimistic when the iterate is ill-conditioned.
  static double backtrack(const RMatrix& S, const RMatrix& dS, double alpha) {
    for (int k = 0; k < kBacktrackSteps; ++k, alpha *= 0.8) {
      Eigen::LLT<RMatrix> llt(S + alpha * dS);
      if (llt.info() == Eigen::Success) return alpha;
    }
    return 0.0;
  }

  void step_lengths(const Iterate& it, const Scaling& sc, const Direction& dir, double& ap, double& ad) const {
    const RMatrix dXs = sc.Ginv * dir.dX * sc.Ginv.transpose();
    const RMatrix dZs = sc.G.transpose() * dir.dZ * sc.G;
    const double amax_p = std::min(max_step_psd(sc.d, dXs), max_step_lp(it.s, dir.ds));
    const double amax_d = std::min(max_step_psd(sc.d, dZs), max_step_lp(it.z, dir.dz));
    ap = std::min(1.0, kStepFraction * amax_p);
    ad = std::min(1.0, kStepFraction * amax_d);
  }

  void store(const Iterate& it, SdpSolution& out) const {
    out.X = it.X;
    out.Z = it.Z;
    out.y = it.y;
    out.slacks.resize(mi_);
    for (int j = 0; j < mi_; ++j) out.slacks[j] = cons_[static_cast<std::size_t>(me_ + j)]->trace_product(it.X) - b_[me_ + j];
    out.objective = p_.C.cwiseProduct(it.X).sum();
    out.dual_objective = b_.dot(it.y);
    out.duality_gap = std::abs(out.objective - out.dual_objective);
    const RVector ax = apply_a(it.X, it.s);
    double pr = 0.0;
    for (int i = 0; i < m_; ++i) pr = std::max(pr, std::abs(ax[i] - b_[i]) / (1.0 + std::abs(b_[i])));
    out.primal_residual = pr;
    out.dual_residual = (p_.C - it.Z - apply_at(it.y)).norm() / (1.0 + c_norm_);
  }

  const SdpProblem& p_;
  SolverOptions opts_;
  int n_;
  int me_;
  int mi_;
  int m_;
  std::vector<const SymmetricSparse*> cons_;
  RVector b_;
  double c_norm_ = 0.0;
  double b_norm_ = 0.0;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts) {
  problem.validate();
  if (opts.tol <= 0.0 || opts.max_iter < 1) throw ParameterError("solve: tol must be positive and max_iter >= 1");
  return Solver(problem, opts).run();
}

namespace {

ResidualReport residuals(const SdpProblem& problem, const RMatrix& X) {
  problem.validate();
  if (X.rows() != problem.n || X.cols() != problem.n) throw ParameterError("check_solution: X has the wrong shape");
  ResidualReport r;
  const RMatrix Xs = 0.5 * (X + X.transpose());
  r.min_eigenvalue = Eigen::SelfAdjointEigenSolver<RMatrix>(Xs, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  r.psd_ok = r.min_eigenvalue >= -1e-7 * (1.0 + Xs.norm());
  r.equalities_ok = true;
  for (const auto& c : problem.equalities) {
    const double v = c.A.trace_product(Xs) - c.b;
    r.equality_residuals.push_back(v);
    const double rel = std::abs(v) / (1.0 + std::abs(c.b));
    r.max_equality_violation = std::max(r.max_equality_violation, rel);
    if (rel > 1e-6) r.equalities_ok = false;
  }
  r.inequalities_ok = true;
  for (const auto& c : problem.inequalities) {
    const double v = c.A.trace_product(Xs) - c.b;
    r.inequality_residuals.push_back(v);
    const double rel = std::max(-v, 0.0) / (1.0 + std::abs(c.b));
    r.max_inequality_violation = std::max(r.max_inequality_violation, rel);
    if (rel > 1e-6) r.inequalities_ok = false;
  }
  r.objective = problem.C.cwiseProduct(Xs).sum();
  return r;
}

}  // namespace

ResidualReport check_solution(const SdpProblem& problem, const RMatrix& X) { return residuals(problem, X); }

ResidualReport check_solution(const SdpProblem& problem, const SdpSolution& solution) {
  ResidualReport r = residuals(problem, solution.X);
  r.duality_gap = std::abs(r.objective - solution.dual_objective);
  r.gap_ok = r.duality_gap <= 1e-6 * (1.0 + std::abs(r.objective));
  return r;
}

}  // namespace ftn::sdp
