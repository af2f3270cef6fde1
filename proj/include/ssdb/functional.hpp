#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ssdb/extended_real.hpp"
#include "ssdb/subspace.hpp"

namespace ssdb {

/// Conjugate value together with a maximizer of ⌊.,d⌋ - f when the
/// supremum is finite and attained (least-norm solution of the reduced
/// stationarity system).
struct ConjugateValue {
  ExtReal value;
  std::optional<Vec> argmax;
};

/// A convex quadratic restricted to an affine subspace:
///
///   f(x) = 1/2 x'Hx + l'x + kappa   on dom = offset + span(dom_basis),
///   f(x) = +inf                     elsewhere.
///
/// The family contains the subspace restrictions q_A of the pairing
/// quadratic, is closed under the pairing translation f -> f_c, and (when
/// the reduced Hessian on the domain is positive semidefinite) has an
/// exactly computable conjugate with respect to ⌊.,.⌋. That exactness is
/// the reason the family is restricted to quadratics rather than handling
/// arbitrary convex functions.
class QuadraticFunctional {
 public:
  QuadraticFunctional(Space space, Mat hessian, Vec linear, double constant, Mat dom_basis,
                      Vec dom_offset, const Tolerance& tol = {});

  /// q_A: the pairing quadratic on the subspace A, +inf off it.
  static QuadraticFunctional restriction_of_q(const Subspace& a);

  /// Indicator of a single point (H = 0, value `constant` at the point).
  static QuadraticFunctional point_indicator(const Space& space, const Vec& point,
                                             double constant = 0.0);

  const Space& space() const { return space_; }
  const Mat& hessian() const { return hessian_; }
  const Vec& linear() const { return linear_; }
  double constant() const { return constant_; }
  const Mat& dom_basis() const { return dom_basis_; }
  const Vec& dom_offset() const { return dom_offset_; }

  bool in_domain(const Vec& x, const Tolerance& tol = {}) const;

  /// +inf off the domain, the quadratic value on it.
  ExtReal eval(const Vec& x, const Tolerance& tol = {}) const;

  /// The translate f_c = f(. + c) - ⌊.,c⌋ - q(c), in closed form: the
  /// domain shifts by -c, H is unchanged, l gains Hc - Pc, and the constant
  /// gains 1/2 c'Hc + l'c - q(c).
  QuadraticFunctional translated(const Vec& c) const;

  /// Fenchel conjugate against the pairing, f^@(d) = sup [⌊.,d⌋ - f].
  /// Computed exactly in domain coordinates: +inf when the reduced Hessian
  /// has a negative eigenvalue (then the sup is +inf for every d) or when
  /// the reduced linear term leaves its range; otherwise the pseudoinverse
  /// formula. Equals the classical Euclidean conjugate evaluated at ι(d).
  ExtReal conjugate(const Vec& d, const Tolerance& tol = {}) const;
  ConjugateValue conjugate_with_argmax(const Vec& d, const Tolerance& tol = {}) const;

 private:
  Space space_;
  Mat hessian_;
  Vec linear_;
  double constant_;
  Mat dom_basis_;
  Vec dom_offset_;
};

/// Residuals of the two translation identities at sampled (b, d) pairs:
/// conjugate-of-translate, (f_c)^@ = (f^@)_c pointwise, and the four-term
/// identity f_c(b) + f_c^@(d) - ⌊b,d⌋ = f(b+c) + f^@(d+c) - ⌊b+c,d+c⌋.
/// Infinite sides must agree in kind; disagreements are counted, and the
/// max residuals cover the finite cases, each scaled by 1 + the magnitudes
/// of the two sides.
struct TranslationIdentityReport {
  double max_conjugate_shift_residual = 0.0;
  double max_four_term_residual = 0.0;
  int finiteness_mismatches = 0;
  int samples = 0;
};

TranslationIdentityReport check_translation_identities(const QuadraticFunctional& f, const Vec& c,
                                                       const std::vector<std::pair<Vec, Vec>>& samples,
                                                       const Tolerance& tol = {});

/// For f = q_A with A q-positive: whenever Fenchel-Young equality
/// q_A(b) + q_A^@(d) = ⌊b,d⌋ holds within tolerance, b - d must lie in the
/// q-complement of A. Returns that containment verdict, or vacuous true
/// when equality (or finiteness) fails. Throws NotQPositive.
bool fenchel_equality_in_complement(const Subspace& a, const Vec& b, const Vec& d,
                                    const Tolerance& tol = {});

}  // namespace ssdb
