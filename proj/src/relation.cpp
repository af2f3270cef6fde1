#include "ssdb/relation.hpp"

#include "ssdb/linalg.hpp"
#include "ssdb/rng.hpp"

namespace ssdb {

Vec embed(const Vec& x, const Vec& xstar) {
  if (x.size() != xstar.size()) {
    throw Error(ErrorCode::DimensionMismatch, "operand and dual operand sizes differ");
  }
  Vec v(2 * x.size());
  v << x, xstar;
  return v;
}

std::pair<Vec, Vec> split(const Vec& v) {
  if (v.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "product-space vector must have even length");
  }
  const Eigen::Index n = v.size() / 2;
  return {v.head(n), v.tail(n)};
}

Vec rho1_point(const Vec& v) {
  auto [x, xstar] = split(v);
  return embed(-x, xstar);
}

LinearRelation::LinearRelation(Subspace sub, const Tolerance& tol)
    : n_(sub.ambient_dim() / 2), sub_(std::move(sub)) {
  if (sub_.ambient_dim() % 2 != 0 || n_ <= 0 ||
      !sub_.space().same_as(Space::product(n_), tol)) {
    throw Error(ErrorCode::SpaceMismatch, "relation subspaces must live in a product space");
  }
}

LinearRelation LinearRelation::from_graph(const Mat& s_matrix, const Tolerance& tol) {
  if (s_matrix.rows() != s_matrix.cols()) {
    throw Error(ErrorCode::InvalidArgument, "operator matrix must be square");
  }
  const Eigen::Index n = s_matrix.rows();
  Mat generators(2 * n, n);
  generators.topRows(n) = Mat::Identity(n, n);
  generators.bottomRows(n) = s_matrix;
  return LinearRelation(Subspace::span(Space::product(static_cast<int>(n)), generators, tol), tol);
}

LinearRelation LinearRelation::from_pairs(int n, const std::vector<Vec>& pairs,
                                          const Tolerance& tol) {
  const Space space = Space::product(n);
  for (const Vec& v : pairs) {
    if (v.size() != 2 * n) {
      throw Error(ErrorCode::DimensionMismatch, "pair vectors must have length 2n");
    }
  }
  return LinearRelation(Subspace::span(space, pairs, tol), tol);
}

LinearRelation LinearRelation::rho1() const {
  Mat basis = sub_.basis();
  basis.topRows(n_) = -basis.topRows(n_);  // reflection keeps orthonormality
  return LinearRelation(Subspace(sub_.space(), basis));
}

LinearRelation LinearRelation::adjoint(const Tolerance& tol) const {
  // One bilinear constraint <x, a*> - <a, x*> = 0 per basis pair (a, a*).
  const Mat& basis = sub_.basis();
  Mat constraints(basis.cols(), 2 * n_);
  constraints.leftCols(n_) = basis.bottomRows(n_).transpose();
  constraints.rightCols(n_) = -basis.topRows(n_).transpose();
  return LinearRelation(Subspace(sub_.space(), linalg::null_space(constraints, tol.rank), tol),
                        tol);
}

bool LinearRelation::is_monotone(const Tolerance& tol) const { return sub_.is_q_positive(tol); }

bool LinearRelation::is_monotone_direct(const Tolerance& tol) const {
  // Sample points of the relation and test the defining pairwise
  // inequality; the seed is fixed so the verdict is a pure function of the
  // relation. Sampling cannot certify monotonicity, but agreement with the
  // semidefiniteness route is a library invariant exercised by the tests.
  const Mat& basis = sub_.basis();
  std::vector<Vec> points;
  points.push_back(Vec::Zero(2 * n_));
  for (Eigen::Index i = 0; i < basis.cols(); ++i) points.push_back(basis.col(i));
  GaussianRng rng(0x9e3779b97f4a7c15ULL);
  for (int t = 0; t < 64; ++t) {
    if (basis.cols() == 0) break;
    points.push_back(basis * rng.normal_vec(basis.cols()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Vec diff = points[i] - points[j];
      const auto [dx, dxstar] = split(diff);
      if (dx.dot(dxstar) < -tol.abs * (1.0 + diff.squaredNorm())) return false;
    }
  }
  return true;
}

bool LinearRelation::is_maximal_monotone(MaximalityMethod method, const Tolerance& tol) const {
  if (!is_monotone(tol)) {
    throw Error(ErrorCode::NotMonotone, "maximality queries require a monotone relation");
  }
  switch (method) {
    case MaximalityMethod::ViaComplement:
      return sub_.is_maximal_q_positive(tol).maximal;
    case MaximalityMethod::ViaAdjointMonotone:
      return adjoint(tol).rho1().subspace().is_q_negative(tol);
    case MaximalityMethod::ViaAdjointMaximal: {
      const Subspace reflected = adjoint(tol).rho1().subspace();
      if (!reflected.is_q_negative(tol)) return false;
      return reflected.is_maximal_q_negative(tol).maximal;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown maximality method");
}

}  // namespace ssdb
