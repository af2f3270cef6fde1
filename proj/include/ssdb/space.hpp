#pragma once

#include "ssdb/linalg.hpp"
#include "ssdb/tolerance.hpp"

namespace ssdb {

/// Half the squared Euclidean norm, the base norm functional g0.
inline double g0(const Vec& b) { return 0.5 * b.squaredNorm(); }

/// Finite-dimensional symmetrically self-dual Banach space.
///
/// The ambient space is R^n with the Euclidean norm. A symmetric involutive
/// matrix P (P = P', P*P = I) defines everything else:
///
///   pairing   ⌊b,c⌋ = b' P c          (symmetric bilinear form)
///   quadratic q(b)  = 1/2 ⌊b,b⌋
///   duality   ι(c)  = P c             (isometry of R^n onto itself)
///
/// Involutivity is exactly what makes ι an isometry onto the dual, so valid
/// spaces and symmetric involutive matrices are in bijection under this norm
/// model. Instances are immutable; all operations are pure.
class Space {
 public:
  /// Checks symmetry and involutivity of `pairing` and wraps it.
  /// Throws NotSymmetric / NotInvolutive / InvalidArgument.
  static Space validated(Mat pairing, const Tolerance& tol = {});

  /// Canonical constructions.
  static Space hilbert(int n);       ///< P = I; q = g0.
  static Space anti_hilbert(int n);  ///< P = -I; q = -g0.
  static Space paper_r3();           ///< R^3 with q(b) = b1*b2 + 1/2 b3^2.
  static Space product(int n);       ///< R^n x R^n with q(x,x*) = <x,x*>.

  int dim() const { return static_cast<int>(pairing_.rows()); }
  const Mat& pairing() const { return pairing_; }

  /// Max-abs entry of P; the magnitude that scales q-related tolerances.
  double pairing_max_abs() const { return pairing_max_abs_; }

  double bracket(const Vec& b, const Vec& c) const;
  double q(const Vec& b) const;
  Vec iota(const Vec& c) const;

  /// The space with pairing -P (and hence q = -q, ι = -ι). Exact: negating
  /// twice restores the original matrix bit for bit.
  Space negated() const;

  /// Membership in N_q(g0) = { b : g0(b) + q(b) = 0 }. The tested quantity
  /// is nonnegative up to roundoff, so this is a one-sided threshold:
  /// g0(b) + q(b) <= abs_tol * (1 + |b|^2).
  bool in_nq_g0(const Vec& b, const Tolerance& tol = {}) const;

  /// Scalar characterization of ι(c) ∈ ∂g0(b):
  /// |g0(b) + g0(c) - ⌊b,c⌋| <= abs_tol * (1 + |b|^2 + |c|^2).
  /// The left side equals 1/2 |ι(c) - b|^2, so the check is equivalent to
  /// ι(c) = b within tolerance.
  bool subdiff_g0_check(const Vec& b, const Vec& c, const Tolerance& tol = {}) const;

  /// True when the two spaces have equal dimension and pairings within tol.
  bool same_as(const Space& other, const Tolerance& tol = {}) const;

 private:
  explicit Space(Mat pairing);

  void require_dim(const Vec& v, const char* what) const;

  Mat pairing_;
  double pairing_max_abs_;
};

}  // namespace ssdb
