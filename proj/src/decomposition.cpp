#include "ssdb/decomposition.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>

#include "ssdb/functional.hpp"
#include "ssdb/relation.hpp"

namespace ssdb {

Decomposition decompose(const Subspace& a, const Vec& c, const Tolerance& tol, bool force) {
  const Space& s = a.space();
  if (c.size() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the space");
  }
  if (!force) {
    if (!a.is_q_positive(tol)) {
      throw Error(ErrorCode::NotQPositive, "decomposition requires a q-positive subspace");
    }
    if (!a.q_complement(tol).is_q_negative(tol)) {
      throw Error(ErrorCode::ComplementNotQNegative,
                  "decomposition requires the q-orthogonal complement to be q-negative");
    }
  }

  const Mat& basis = a.basis();
  const Mat& p = s.pairing();
  Vec z(basis.cols());
  if (basis.cols() == 0) {
    z = Vec(0);
  } else {
    // Objective in domain coordinates has Hessian B'PB + I, which is at
    // least the identity when q >= 0 on A; the stationarity system is
    // therefore uniquely solvable under the preconditions.
    const Mat reduced = basis.transpose() * p * basis + Mat::Identity(basis.cols(), basis.cols());
    const Vec rhs = basis.transpose() * (p * c + c);
    Eigen::LDLT<Mat> ldlt(reduced);
    z = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success ||
        (reduced * z - rhs).norm() > tol.abs * (1.0 + rhs.norm())) {
      throw Error(ErrorCode::SingularSystem, "reduced stationarity system is not solvable");
    }
  }

  Decomposition result;
  result.a = basis * z;
  result.nvec = result.a - c;
  result.d = -s.iota(result.nvec);

  const Vec in_a_residual = result.a - basis * (basis.transpose() * result.a);
  result.residuals["domain"] = in_a_residual.norm();
  result.residuals["recomposition"] = (c - (result.a - result.nvec)).norm();
  result.residuals["nqg0"] = std::abs(g0(result.nvec) + s.q(result.nvec));
  result.residuals["eq9"] =
      std::abs(g0(result.nvec) + g0(result.d) + s.bracket(result.nvec, result.d));

  const QuadraticFunctional shifted = QuadraticFunctional::restriction_of_q(a).translated(c);
  const ExtReal primal = shifted.eval(result.nvec, tol);
  const ExtReal dual = shifted.conjugate(result.d, tol);
  if (primal.finite() && dual.finite()) {
    result.residuals["fenchel_equality"] =
        std::abs(primal.value() + dual.value() - s.bracket(result.nvec, result.d));
  } else {
    result.residuals["fenchel_equality"] = std::numeric_limits<double>::max();
  }
  return result;
}

bool decomposition_in_subdiff_domain(const Subspace& a, const Vec& c, const Tolerance& tol,
                                     bool force) {
  return a.contains(decompose(a, c, tol, force).a, tol);
}

ResolventAgreement resolvent_crosscheck(const Mat& s_matrix, const Vec& c, const Tolerance& tol) {
  if (s_matrix.rows() != s_matrix.cols()) {
    throw Error(ErrorCode::InvalidArgument, "operator matrix must be square");
  }
  const Eigen::Index n = s_matrix.rows();
  if (c.size() != 2 * n) {
    throw Error(ErrorCode::DimensionMismatch, "point must live in the product space");
  }
  const Mat symmetric_part = 0.5 * (s_matrix + s_matrix.transpose());
  const double scale = s_matrix.size() > 0 ? s_matrix.cwiseAbs().maxCoeff() : 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetric_part, Eigen::EigenvaluesOnly);
  if (n > 0 && eig.eigenvalues().minCoeff() < -tol.abs * (1.0 + scale)) {
    throw Error(ErrorCode::NotMonotoneMatrix, "symmetric part has a negative eigenvalue");
  }

  ResolventAgreement report;
  const auto [c1, c2] = split(c);
  // I + S is invertible for monotone S (real parts of its spectrum are >= 1).
  report.x = (Mat::Identity(n, n) + s_matrix).partialPivLu().solve(c1 + c2);
  report.a_resolvent = embed(report.x, s_matrix * report.x);

  const Decomposition dec = decompose(LinearRelation::from_graph(s_matrix, tol).subspace(), c, tol);
  report.a_decomposition = dec.a;
  report.max_diff = (report.a_resolvent - report.a_decomposition).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace ssdb
