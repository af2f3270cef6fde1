#pragma once

#include <map>
#include <string>

#include "ssdb/subspace.hpp"

namespace ssdb {

/// Transversality decomposition of a point c against a q-positive linear
/// subspace A: c = a - n with a in A and n in N_q(g0). The vector d is the
/// dual point recovered through the pairing, d = -P n, so that
/// ι(d) = -n is the g0-subgradient produced by the underlying minimization.
///
/// `residuals` always carries the keys
///   domain          distance of a from A
///   recomposition   |c - (a - n)|
///   nqg0            g0(n) + q(n)
///   eq9             |g0(n) + g0(d) + ⌊n,d⌋|
///   fenchel_equality |f_c(n) + f_c^@(d) - ⌊n,d⌋| for f = q_A
/// all of which vanish (up to roundoff) when the preconditions hold.
/// Identity sides that evaluate to +inf are reported as DBL_MAX.
struct Decomposition {
  Vec a;
  Vec nvec;
  Vec d;
  std::map<std::string, double> residuals;
};

/// Minimizes (q_A)_c + g0 over the shifted domain in closed form and emits
/// the decomposition. The objective restricted to domain coordinates has
/// Hessian B'(P+I)B which dominates the identity when q >= 0 on A, so the
/// reduced system B'(P+I)B z = B'(P+I)c is solved directly; the minimizer
/// is unique and the output deterministic.
///
/// Preconditions (checked unless `force`): A is q-positive and its
/// q-complement is q-negative. Throws NotQPositive /
/// ComplementNotQNegative; with `force` the solve runs anyway and the
/// residuals report which conclusions failed. SingularSystem is guarded
/// although it cannot occur when the preconditions hold.
Decomposition decompose(const Subspace& a, const Vec& c, const Tolerance& tol = {},
                        bool force = false);

/// Runs decompose and checks that the domain point lands in the domain of
/// the subdifferential of q_A, which for this quadratic family is exactly
/// A itself.
bool decomposition_in_subdiff_domain(const Subspace& a, const Vec& c, const Tolerance& tol = {},
                                     bool force = false);

/// Agreement report between the decomposition on a monotone matrix graph
/// and the direct resolvent solve it reduces to in the product space.
struct ResolventAgreement {
  Vec x;                 ///< solution of (I + S) x = c1 + c2
  Vec a_resolvent;       ///< (x, Sx)
  Vec a_decomposition;   ///< the a returned by decompose on graph(S)
  double max_diff = 0.0; ///< max-abs difference of the two a vectors
};

/// Independent cross-check of decompose in the product space: for a
/// monotone matrix S (symmetric part positive semidefinite) and
/// c = (c1, c2), solves (I + S) x = c1 + c2 directly and compares
/// (x, Sx) with the decomposition's domain point. Throws NotMonotoneMatrix
/// when the symmetric part has a negative eigenvalue.
ResolventAgreement resolvent_crosscheck(const Mat& s_matrix, const Vec& c,
                                        const Tolerance& tol = {});

}  // namespace ssdb
