#include "ssdb/subspace.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

#include "ssdb/linalg.hpp"
#include "ssdb/rng.hpp"

namespace ssdb {

namespace {

void require_same_space(const Space& a, const Space& b, const Tolerance& tol) {
  if (!a.same_as(b, tol)) {
    throw Error(ErrorCode::SpaceMismatch, "operands live in different spaces");
  }
}

// Sign convention for reported eigenvector witnesses: largest-magnitude
// entry positive, so repeated runs emit identical vectors.
Vec canonical_sign(Vec v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
  return v;
}

}  // namespace

Subspace::Subspace(Space space, Mat orthonormal_basis, const Tolerance& tol)
    : space_(std::move(space)), basis_(std::move(orthonormal_basis)) {
  if (basis_.rows() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "basis rows must match the ambient dimension");
  }
  if (basis_.cols() > basis_.rows()) {
    throw Error(ErrorCode::InvalidArgument, "basis has more columns than the ambient dimension");
  }
  if (basis_.cols() > 0) {
    const Mat gram = basis_.transpose() * basis_;
    const double err = (gram - Mat::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
    if (err > tol.abs * (1.0 + 1.0)) {
      std::ostringstream msg;
      msg << "basis is not orthonormal (Gram deviation " << err << ")";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }
}

Subspace Subspace::span(const Space& space, const std::vector<Vec>& generators,
                        const Tolerance& tol) {
  Mat g(space.dim(), static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != space.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match the space");
    }
    g.col(static_cast<Eigen::Index>(i)) = generators[i];
  }
  return span(space, g, tol);
}

Subspace Subspace::span(const Space& space, std::initializer_list<Vec> generators,
                        const Tolerance& tol) {
  return span(space, std::vector<Vec>(generators), tol);
}

Subspace Subspace::span(const Space& space, const Mat& generators, const Tolerance& tol) {
  if (generators.rows() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match the space");
  }
  return Subspace(space, linalg::orthonormal_span(generators, tol.rank), tol);
}

Subspace Subspace::zero(const Space& space) { return Subspace(space, Mat(space.dim(), 0)); }

Subspace Subspace::whole(const Space& space) {
  return Subspace(space, Mat::Identity(space.dim(), space.dim()));
}

Subspace Subspace::in_space(const Space& other) const {
  if (other.dim() != space_.dim()) {
    throw Error(ErrorCode::SpaceMismatch, "target space has a different dimension");
  }
  return Subspace(other, basis_);
}

bool Subspace::contains(const Vec& b, const Tolerance& tol) const {
  if (b.size() != ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the space");
  }
  const Vec residual = b - basis_ * (basis_.transpose() * b);
  return residual.norm() <= tol.abs * (1.0 + b.norm());
}

Mat Subspace::reduced_q_form() const { return basis_.transpose() * space_.pairing() * basis_; }

Subspace Subspace::q_complement(const Tolerance& tol) const {
  const Mat constraints = basis_.transpose() * space_.pairing();  // k x n
  return Subspace(space_, linalg::null_space(constraints, tol.rank), tol);
}

bool Subspace::is_q_positive(const Tolerance& tol) const {
  if (dim() == 0) return true;  // {0} is a nonempty set with q(0) = 0
  Eigen::SelfAdjointEigenSolver<Mat> eig(reduced_q_form(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol.abs * (1.0 + space_.pairing_max_abs());
}

bool Subspace::is_q_negative(const Tolerance& tol) const {
  return in_space(space_.negated()).is_q_positive(tol);
}

ExtReal Subspace::inf_q_over_translate(const Vec& b, const Tolerance& tol) const {
  if (b.size() != ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the space");
  }
  if (dim() == 0) return space_.q(b);  // only candidate is a = 0

  const Mat m = reduced_q_form();
  const Vec r = basis_.transpose() * (space_.pairing() * b);
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  const Vec lambda = eig.eigenvalues();
  const double lambda_abs_max = lambda.cwiseAbs().maxCoeff();

  if (lambda.minCoeff() < -tol.abs * (1.0 + space_.pairing_max_abs())) {
    return ExtReal::neg_inf();  // q indefinite on A: unbounded below
  }

  const double cutoff = tol.rank * lambda_abs_max;
  const Vec coeffs = eig.eigenvectors().transpose() * r;
  double quad = 0.0;
  double off_range_sq = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) {
      quad += coeffs(i) * coeffs(i) / lambda(i);
    } else {
      off_range_sq += coeffs(i) * coeffs(i);
    }
  }
  if (std::sqrt(off_range_sq) > tol.abs * (1.0 + r.norm())) {
    return ExtReal::neg_inf();  // linear term escapes along a null direction
  }
  return space_.q(b) - 0.5 * quad;
}

MaximalityCheck Subspace::is_maximal_q_positive(const Tolerance& tol) const {
  if (!is_q_positive(tol)) {
    throw Error(ErrorCode::NotQPositive, "maximality criterion requires a q-positive subspace");
  }
  const Subspace complement = q_complement(tol);
  if (complement.dim() == 0) return {true, std::nullopt};

  Eigen::SelfAdjointEigenSolver<Mat> eig(complement.reduced_q_form());
  Eigen::Index top = 0;
  const double lambda_max = eig.eigenvalues().maxCoeff(&top);
  if (lambda_max <= tol.abs * (1.0 + space_.pairing_max_abs())) {
    return {true, std::nullopt};
  }
  // q(c) = lambda_max / 2 > 0 while <A, c> pairs to zero, so A + span{c}
  // is strictly larger and still q-positive.
  Vec witness = canonical_sign(complement.basis() * eig.eigenvectors().col(top));
  return {false, witness};
}

MaximalityCheck Subspace::is_maximal_q_negative(const Tolerance& tol) const {
  if (!is_q_negative(tol)) {
    throw Error(ErrorCode::NotQNegative, "maximality criterion requires a q-negative subspace");
  }
  return in_space(space_.negated()).is_maximal_q_positive(tol);
}

OracleOutcome Subspace::maximality_oracle(int trials, std::uint64_t seed,
                                          const Tolerance& tol) const {
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trial count must be nonnegative");
  if (!is_q_positive(tol)) {
    throw Error(ErrorCode::NotQPositive, "extension oracle requires a q-positive subspace");
  }

  GaussianRng gauss(seed);
  const double scale = 1.0 + space_.pairing_max_abs();

  // Precompute the reduced form once; the per-candidate work is then a
  // projection plus a diagonal solve, identical to inf_q_over_translate.
  const bool reduced = dim() > 0;
  Eigen::SelfAdjointEigenSolver<Mat> eig;
  double cutoff = 0.0;
  bool indefinite = false;
  if (reduced) {
    eig.compute(reduced_q_form());
    const Vec lambda = eig.eigenvalues();
    cutoff = tol.rank * lambda.cwiseAbs().maxCoeff();
    indefinite = lambda.minCoeff() < -tol.abs * (1.0 + space_.pairing_max_abs());
  }

  for (int t = 0; t < trials; ++t) {
    const Vec c = scale * gauss.normal_vec(ambient_dim());
    if (contains(c, tol)) continue;

    double inf_value;
    bool inf_finite = true;
    if (!reduced) {
      inf_value = space_.q(c);
    } else if (indefinite) {
      inf_finite = false;
      inf_value = 0.0;
    } else {
      const Vec r = basis_.transpose() * (space_.pairing() * c);
      const Vec coeffs = eig.eigenvectors().transpose() * r;
      double quad = 0.0;
      double off_range_sq = 0.0;
      for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        if (eig.eigenvalues()(i) > cutoff) {
          quad += coeffs(i) * coeffs(i) / eig.eigenvalues()(i);
        } else {
          off_range_sq += coeffs(i) * coeffs(i);
        }
      }
      if (std::sqrt(off_range_sq) > tol.abs * (1.0 + r.norm())) {
        inf_finite = false;
        inf_value = 0.0;
      } else {
        inf_value = space_.q(c) - 0.5 * quad;
      }
    }

    if (inf_finite && inf_value >= -tol.abs) {
      return {true, c, t + 1, seed};  // A ∪ {c} is q-positive and c ∉ A
    }
  }
  return {false, std::nullopt, trials, seed};
}

Subspace sum(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  require_same_space(a.space(), b.space(), tol);
  Mat joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), b.basis();
  return Subspace::span(a.space(), joined, tol);
}

Subspace intersection(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  require_same_space(a.space(), b.space(), tol);
  const int n = a.ambient_dim();
  Mat stacked(2 * n, n);
  stacked.topRows(n) = Mat::Identity(n, n) - a.projector();
  stacked.bottomRows(n) = Mat::Identity(n, n) - b.projector();
  return Subspace(a.space(), linalg::null_space(stacked, tol.rank), tol);
}

double projector_distance(const Subspace& a, const Subspace& b) {
  return linalg::projector_distance(a.basis(), b.basis());
}

PointSet::PointSet(Space space_in, std::vector<Vec> points_in)
    : space(std::move(space_in)), points(std::move(points_in)) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "point set must be nonempty");
  }
  for (const Vec& p : points) {
    if (p.size() != space.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the space");
    }
  }
}

PairwiseCheck is_q_positive(const PointSet& points, const Tolerance& tol) {
  PairwiseCheck result;
  double worst_margin = 0.0;
  const int count = static_cast<int>(points.points.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const Vec diff = points.points[i] - points.points[j];
      const double value = points.space.q(diff);
      const double threshold = -tol.abs * (1.0 + diff.squaredNorm());
      if (value < threshold && value < worst_margin) {
        worst_margin = value;
        result.positive = false;
        result.witness = std::make_pair(i, j);
        result.worst_value = value;
      }
    }
  }
  return result;
}

}  // namespace ssdb
