#pragma once

#include <Eigen/Dense>

namespace ssdb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace linalg {

/// Orthonormal basis (n x k) of the column span of `generators` (n x g).
/// Rank is decided by the singular-value cutoff rank_tol * sigma_max.
Mat orthonormal_span(const Mat& generators, double rank_tol);

/// Orthonormal basis (n x (n - rank)) of the null space of `constraints`
/// (m x n). An empty constraint matrix yields the identity basis.
Mat null_space(const Mat& constraints, double rank_tol);

/// Max-abs entry of B1*B1' - B2*B2'; the metric used for subspace equality.
double projector_distance(const Mat& basis1, const Mat& basis2);

}  // namespace linalg
}  // namespace ssdb
