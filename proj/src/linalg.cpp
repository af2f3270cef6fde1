#include "ssdb/linalg.hpp"

#include <Eigen/SVD>

namespace ssdb::linalg {

Mat orthonormal_span(const Mat& generators, double rank_tol) {
  const Eigen::Index n = generators.rows();
  if (generators.cols() == 0 || generators.norm() == 0.0) {
    return Mat(n, 0);
  }
  Eigen::JacobiSVD<Mat> svd(generators, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double cutoff = rank_tol * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat null_space(const Mat& constraints, double rank_tol) {
  const Eigen::Index n = constraints.cols();
  if (constraints.rows() == 0 || constraints.norm() == 0.0) {
    return Mat::Identity(n, n);
  }
  Eigen::JacobiSVD<Mat> svd(constraints, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = rank_tol * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

double projector_distance(const Mat& basis1, const Mat& basis2) {
  const Mat diff = basis1 * basis1.transpose() - basis2 * basis2.transpose();
  return diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
}

}  // namespace ssdb::linalg
