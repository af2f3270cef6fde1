#include "ssdb/space.hpp"

#include <sstream>

namespace ssdb {

Space::Space(Mat pairing)
    : pairing_(std::move(pairing)),
      pairing_max_abs_(pairing_.size() == 0 ? 0.0 : pairing_.cwiseAbs().maxCoeff()) {}

Space Space::validated(Mat pairing, const Tolerance& tol) {
  if (pairing.rows() == 0 || pairing.rows() != pairing.cols()) {
    throw Error(ErrorCode::InvalidArgument, "pairing must be a nonempty square matrix");
  }
  if (!pairing.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "pairing entries must be finite");
  }
  const double max_abs = pairing.cwiseAbs().maxCoeff();
  const double asym = (pairing - pairing.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.abs * (1.0 + max_abs)) {
    std::ostringstream msg;
    msg << "pairing deviates from its transpose by " << asym;
    throw Error(ErrorCode::NotSymmetric, msg.str());
  }
  const Mat residual = pairing * pairing - Mat::Identity(pairing.rows(), pairing.cols());
  const double invol = residual.cwiseAbs().maxCoeff();
  if (invol > tol.abs * (1.0 + max_abs) * (1.0 + max_abs)) {
    std::ostringstream msg;
    msg << "pairing squared deviates from the identity by " << invol
        << "; the duality map would not be an isometry onto the dual";
    throw Error(ErrorCode::NotInvolutive, msg.str());
  }
  return Space(std::move(pairing));
}

Space Space::hilbert(int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return Space(Mat::Identity(n, n));
}

Space Space::anti_hilbert(int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return Space(-Mat::Identity(n, n));
}

Space Space::paper_r3() {
  Mat p(3, 3);
  p << 0, 1, 0,
       1, 0, 0,
       0, 0, 1;
  return Space(std::move(p));
}

Space Space::product(int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Mat p = Mat::Zero(2 * n, 2 * n);
  p.topRightCorner(n, n) = Mat::Identity(n, n);
  p.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return Space(std::move(p));
}

void Space::require_dim(const Vec& v, const char* what) const {
  if (v.size() != dim()) {
    std::ostringstream msg;
    msg << what << " has dimension " << v.size() << ", space has dimension " << dim();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

double Space::bracket(const Vec& b, const Vec& c) const {
  require_dim(b, "first argument");
  require_dim(c, "second argument");
  return b.dot(pairing_ * c);
}

double Space::q(const Vec& b) const {
  require_dim(b, "argument");
  return 0.5 * b.dot(pairing_ * b);
}

Vec Space::iota(const Vec& c) const {
  require_dim(c, "argument");
  return pairing_ * c;
}

Space Space::negated() const { return Space(-pairing_); }

bool Space::in_nq_g0(const Vec& b, const Tolerance& tol) const {
  require_dim(b, "argument");
  return g0(b) + q(b) <= tol.abs * (1.0 + b.squaredNorm());
}

bool Space::subdiff_g0_check(const Vec& b, const Vec& c, const Tolerance& tol) const {
  require_dim(b, "first argument");
  require_dim(c, "second argument");
  const double residual = std::abs(g0(b) + g0(c) - bracket(b, c));
  return residual <= tol.abs * (1.0 + b.squaredNorm() + c.squaredNorm());
}

bool Space::same_as(const Space& other, const Tolerance& tol) const {
  if (dim() != other.dim()) return false;
  return (pairing_ - other.pairing_).cwiseAbs().maxCoeff() <= tol.abs * (1.0 + pairing_max_abs_);
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotInvolutive: return "NotInvolutive";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotQPositive: return "NotQPositive";
    case ErrorCode::NotQNegative: return "NotQNegative";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::ComplementNotQNegative: return "ComplementNotQNegative";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotMonotoneMatrix: return "NotMonotoneMatrix";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace ssdb
