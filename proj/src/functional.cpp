#include "ssdb/functional.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ssdb {

namespace {

struct ReducedConjugate {
  bool finite = false;
  double value = 0.0;
  Vec argmax;  // valid only when finite
};

// sup over z of -1/2 z'Mz + w'z + phi0 with M = B'HB symmetric.
// Finite exactly when M is PSD (within tolerance) and w lies in range(M);
// the reported maximizer is the least-norm stationary point.
ReducedConjugate reduced_sup(const Mat& m, const Vec& w, double phi0, double h_scale,
                             const Tolerance& tol) {
  ReducedConjugate out;
  if (m.rows() == 0) {
    out.finite = true;
    out.value = phi0;
    out.argmax = Vec(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  const Vec lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -tol.abs * (1.0 + h_scale)) {
    return out;  // concave direction missing: sup = +inf for every w
  }
  const double cutoff = tol.rank * lambda.cwiseAbs().maxCoeff();
  const Vec coeffs = eig.eigenvectors().transpose() * w;
  double quad = 0.0;
  double off_range_sq = 0.0;
  Vec z = Vec::Zero(m.rows());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) {
      quad += coeffs(i) * coeffs(i) / lambda(i);
      z += (coeffs(i) / lambda(i)) * eig.eigenvectors().col(i);
    } else {
      off_range_sq += coeffs(i) * coeffs(i);
    }
  }
  if (std::sqrt(off_range_sq) > tol.abs * (1.0 + w.norm())) {
    return out;  // linear growth along a null direction of M
  }
  out.finite = true;
  out.value = 0.5 * quad + phi0;
  out.argmax = z;
  return out;
}

double rel_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace

QuadraticFunctional::QuadraticFunctional(Space space, Mat hessian, Vec linear, double constant,
                                         Mat dom_basis, Vec dom_offset, const Tolerance& tol)
    : space_(std::move(space)),
      hessian_(std::move(hessian)),
      linear_(std::move(linear)),
      constant_(constant),
      dom_basis_(std::move(dom_basis)),
      dom_offset_(std::move(dom_offset)) {
  const int n = space_.dim();
  if (hessian_.rows() != n || hessian_.cols() != n || linear_.size() != n ||
      dom_basis_.rows() != n || dom_offset_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "functional fields must match the space dimension");
  }
  if (!hessian_.allFinite() || !linear_.allFinite() || !std::isfinite(constant_) ||
      !dom_basis_.allFinite() || !dom_offset_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "functional fields must be finite");
  }
  const double h_scale = hessian_.size() > 0 ? hessian_.cwiseAbs().maxCoeff() : 0.0;
  if ((hessian_ - hessian_.transpose()).cwiseAbs().maxCoeff() > tol.abs * (1.0 + h_scale)) {
    throw Error(ErrorCode::NotSymmetric, "quadratic coefficient must be symmetric");
  }
  if (dom_basis_.cols() > 0) {
    const Mat gram = dom_basis_.transpose() * dom_basis_;
    if ((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 2.0 * tol.abs) {
      throw Error(ErrorCode::InvalidArgument, "domain basis is not orthonormal");
    }
  }
}

QuadraticFunctional QuadraticFunctional::restriction_of_q(const Subspace& a) {
  const Space& s = a.space();
  return QuadraticFunctional(s, s.pairing(), Vec::Zero(s.dim()), 0.0, a.basis(),
                             Vec::Zero(s.dim()));
}

QuadraticFunctional QuadraticFunctional::point_indicator(const Space& space, const Vec& point,
                                                         double constant) {
  return QuadraticFunctional(space, Mat::Zero(space.dim(), space.dim()), Vec::Zero(space.dim()),
                             constant, Mat(space.dim(), 0), point);
}

bool QuadraticFunctional::in_domain(const Vec& x, const Tolerance& tol) const {
  if (x.size() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the space");
  }
  const Vec shifted = x - dom_offset_;
  const Vec residual = shifted - dom_basis_ * (dom_basis_.transpose() * shifted);
  return residual.norm() <= tol.abs * (1.0 + shifted.norm());
}

ExtReal QuadraticFunctional::eval(const Vec& x, const Tolerance& tol) const {
  if (!in_domain(x, tol)) return ExtReal::pos_inf();
  return 0.5 * x.dot(hessian_ * x) + linear_.dot(x) + constant_;
}

QuadraticFunctional QuadraticFunctional::translated(const Vec& c) const {
  if (c.size() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "shift dimension does not match the space");
  }
  const Vec hc = hessian_ * c;
  const Vec new_linear = linear_ + hc - space_.iota(c);
  const double new_constant = constant_ + 0.5 * c.dot(hc) + linear_.dot(c) - space_.q(c);
  return QuadraticFunctional(space_, hessian_, new_linear, new_constant, dom_basis_,
                             dom_offset_ - c);
}

ConjugateValue QuadraticFunctional::conjugate_with_argmax(const Vec& d, const Tolerance& tol) const {
  if (d.size() != space_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dual point dimension does not match the space");
  }
  const Mat m = dom_basis_.transpose() * hessian_ * dom_basis_;
  const Vec pd = space_.iota(d);
  const Vec w = dom_basis_.transpose() * (pd - hessian_ * dom_offset_ - linear_);
  const double phi0 = dom_offset_.dot(pd) - 0.5 * dom_offset_.dot(hessian_ * dom_offset_) -
                      linear_.dot(dom_offset_) - constant_;
  const double h_scale = hessian_.size() > 0 ? hessian_.cwiseAbs().maxCoeff() : 0.0;
  const ReducedConjugate sup = reduced_sup(m, w, phi0, h_scale, tol);
  if (!sup.finite) return {ExtReal::pos_inf(), std::nullopt};
  return {ExtReal(sup.value), dom_offset_ + dom_basis_ * sup.argmax};
}

ExtReal QuadraticFunctional::conjugate(const Vec& d, const Tolerance& tol) const {
  return conjugate_with_argmax(d, tol).value;
}

TranslationIdentityReport check_translation_identities(const QuadraticFunctional& f, const Vec& c,
                                                       const std::vector<std::pair<Vec, Vec>>& samples,
                                                       const Tolerance& tol) {
  TranslationIdentityReport report;
  const Space& s = f.space();
  const QuadraticFunctional fc = f.translated(c);
  const double qc = s.q(c);

  for (const auto& [b, d] : samples) {
    ++report.samples;

    // Conjugate-of-translate identity evaluated at b.
    const ExtReal lhs = fc.conjugate(b, tol);
    const ExtReal shifted = f.conjugate(b + c, tol);
    if (!lhs.same_kind(shifted)) {
      ++report.finiteness_mismatches;
    } else if (lhs.finite()) {
      const double rhs = shifted.value() - s.bracket(b, c) - qc;
      report.max_conjugate_shift_residual =
          std::max(report.max_conjugate_shift_residual, rel_residual(lhs.value(), rhs));
    }

    // Four-term identity: both sides are the Fenchel gap of f_c at (b, d)
    // written before and after undoing the shift.
    const ExtReal fb = fc.eval(b, tol);
    const ExtReal fd = fc.conjugate(d, tol);
    const ExtReal gb = f.eval(b + c, tol);
    const ExtReal gd = f.conjugate(d + c, tol);
    const bool left_finite = fb.finite() && fd.finite();
    const bool right_finite = gb.finite() && gd.finite();
    if (left_finite != right_finite) {
      ++report.finiteness_mismatches;
    } else if (left_finite) {
      const double left = fb.value() + fd.value() - s.bracket(b, d);
      const double right = gb.value() + gd.value() - s.bracket(b + c, d + c);
      report.max_four_term_residual =
          std::max(report.max_four_term_residual, rel_residual(left, right));
    }
  }
  return report;
}

bool fenchel_equality_in_complement(const Subspace& a, const Vec& b, const Vec& d,
                                    const Tolerance& tol) {
  if (!a.is_q_positive(tol)) {
    throw Error(ErrorCode::NotQPositive, "the equality criterion requires a q-positive subspace");
  }
  const QuadraticFunctional qa = QuadraticFunctional::restriction_of_q(a);
  const ExtReal primal = qa.eval(b, tol);
  const ExtReal dual = qa.conjugate(d, tol);
  if (!primal.finite() || !dual.finite()) return true;  // equality cannot hold
  const double pairing = a.space().bracket(b, d);
  const double gap = primal.value() + dual.value() - pairing;
  const double scale = 1.0 + std::abs(primal.value()) + std::abs(dual.value()) + std::abs(pairing);
  if (std::abs(gap) > tol.abs * scale) return true;  // vacuous: equality fails
  return a.q_complement(tol).contains(b - d, tol);
}

}  // namespace ssdb
