#include "ftnsdr/sdp_problem.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "ftnsdr/errors.hpp"

namespace ftn::sdp {

void SymmetricSparse::add(int i, int j, double value) {
  if (i < 0 || j < 0 || i >= order_ || j >= order_) throw ParameterError("SymmetricSparse: index out of range");
  if (i > j) std::swap(i, j);
  for (auto& e : entries_) {
    if (e.row == i && e.col == j) {
      e.value += value;
      return;
    }
  }
  entries_.push_back({i, j, value});
}

double SymmetricSparse::trace_product(const RMatrix& X) const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.row == e.col ? e.value * X(e.row, e.row) : 2.0 * e.value * X(e.row, e.col);
  return s;
}

void SymmetricSparse::accumulate(RMatrix& X, double scale) const {
  for (const auto& e : entries_) {
    X(e.row, e.col) += scale * e.value;
    if (e.row != e.col) X(e.col, e.row) += scale * e.value;
  }
}

RMatrix SymmetricSparse::dense() const {
  RMatrix X = RMatrix::Zero(order_, order_);
  accumulate(X, 1.0);
  return X;
}

void SdpProblem::validate() const {
  if (n <= 0) throw ParameterError("SdpProblem: order must be positive");
  if (C.rows() != n || C.cols() != n) throw ParameterError("SdpProblem: C has the wrong shape");
  if (!C.allFinite()) throw ParameterError("SdpProblem: C has non-finite entries");
  if ((C - C.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + C.cwiseAbs().maxCoeff()))
    throw ParameterError("SdpProblem: C is not symmetric");
  auto check = [this](const LinearConstraint& c) {
    if (c.A.order() != n) throw ParameterError("SdpProblem: constraint order differs from n");
    if (!std::isfinite(c.b)) throw ParameterError("SdpProblem: non-finite right-hand side");
  };
  for (const auto& c : equalities) check(c);
  for (const auto& c : inequalities) check(c);
}

namespace {

void write_block(std::ostream& os, const SymmetricSparse& A) {
  for (const auto& e : A.entries()) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

SymmetricSparse read_block(std::istream& is, int n, int nnz) {
  SymmetricSparse A(n);
  for (int k = 0; k < nnz; ++k) {
    int i = 0;
    int j = 0;
    double v = 0.0;
    if (!(is >> i >> j >> v)) throw ParameterError("read_triplets: truncated entry list");
    A.add(i, j, v);
  }
  return A;
}

void expect(std::istream& is, const std::string& tag) {
  std::string word;
  if (!(is >> word) || word != tag) throw ParameterError("read_triplets: expected " + tag);
}

}  // namespace

void write_triplets(std::ostream& os, const SdpProblem& problem) {
  const auto old = os.precision(17);
  os << problem.n << ' ' << problem.equalities.size() << ' ' << problem.inequalities.size() << '\n';
  SymmetricSparse C(problem.n);
  for (int j = 0; j < problem.n; ++j)
    for (int i = 0; i <= j; ++i)
      if (problem.C(i, j) != 0.0) C.add(i, j, problem.C(i, j));
  os << "C " << C.entries().size() << '\n';
  write_block(os, C);
  for (const auto& c : problem.equalities) {
    os << "EQ " << c.b << ' ' << c.A.entries().size() << '\n';
    write_block(os, c.A);
  }
  for (const auto& c : problem.inequalities) {
    os << "INEQ " << c.b << ' ' << c.A.entries().size() << '\n';
    write_block(os, c.A);
  }
  os.precision(old);
}

SdpProblem read_triplets(std::istream& is) {
  SdpProblem p;
  std::size_t m_eq = 0;
  std::size_t m_ineq = 0;
  if (!(is >> p.n >> m_eq >> m_ineq) || p.n <= 0) throw ParameterError("read_triplets: bad header");
  int nnz = 0;
  expect(is, "C");
  if (!(is >> nnz)) throw ParameterError("read_triplets: bad C block");
  p.C = read_block(is, p.n, nnz).dense();
  auto read_constraints = [&](std::size_t count, const std::string& tag, std::vector<LinearConstraint>& out) {
    for (std::size_t k = 0; k < count; ++k) {
      expect(is, tag);
      LinearConstraint c;
      if (!(is >> c.b >> nnz)) throw ParameterError("read_triplets: bad " + tag + " block");
      c.A = read_block(is, p.n, nnz);
      out.push_back(std::move(c));
    }
  };
  read_constraints(m_eq, "EQ", p.equalities);
  read_constraints(m_ineq, "INEQ", p.inequalities);
  p.validate();
  return p;
}

}  // namespace ftn::sdp
