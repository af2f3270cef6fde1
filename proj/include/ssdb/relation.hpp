#pragma once

#include <utility>
#include <vector>

#include "ssdb/subspace.hpp"

namespace ssdb {

/// Concatenation (x, x*) -> R^{2n} and its inverse. In the product space
/// q(embed(x, x*)) = <x, x*>, the classical monotonicity pairing.
Vec embed(const Vec& x, const Vec& xstar);
std::pair<Vec, Vec> split(const Vec& v);

/// The coordinate reflection (x, x*) -> (-x, x*) applied to a product-space
/// vector. Involutive, and flips the sign of q.
Vec rho1_point(const Vec& v);

/// A linear relation on E = R^n: a linear subspace of E x E* viewed as the
/// graph of a multivalued linear operator. Stored as a subspace of the
/// product SSDB space (pairing [[0,I],[I,0]]), so non-graph relations such
/// as {0} x R^n are first-class. Monotonicity of the relation is exactly
/// q-positivity of the subspace.
class LinearRelation {
 public:
  /// Validates that the subspace lives in the product space of some R^n.
  explicit LinearRelation(Subspace sub, const Tolerance& tol = {});

  /// The graph {(x, Sx)} of a matrix operator.
  static LinearRelation from_graph(const Mat& s_matrix, const Tolerance& tol = {});

  /// The span of explicit (x, x*) pairs, given as concatenated 2n-vectors.
  static LinearRelation from_pairs(int n, const std::vector<Vec>& pairs,
                                   const Tolerance& tol = {});

  int operand_dim() const { return n_; }
  const Subspace& subspace() const { return sub_; }

  /// Image under the reflection (x, x*) -> (-x, x*). Involutive.
  LinearRelation rho1() const;

  /// Adjoint relation A* = {(x, x*) : <x, a*> = <a, x*> for all (a, a*) in A},
  /// computed as the null space of the bilinear constraint matrix built from
  /// a basis of A. Deliberately does not go through the q-complement, so
  /// A0 = rho1(A*) is a genuine cross-check between the two routes.
  LinearRelation adjoint(const Tolerance& tol = {}) const;

  /// Monotonicity, delegated to q-positivity of the underlying subspace.
  bool is_monotone(const Tolerance& tol = {}) const;

  /// Direct pairwise check <x - y, x* - y*> >= 0 on basis combinations,
  /// independent of the semidefiniteness route; used as a cross-check.
  bool is_monotone_direct(const Tolerance& tol = {}) const;

  /// The three equivalent routes to maximal monotonicity:
  ///  ViaComplement       complement criterion on the subspace itself
  ///  ViaAdjointMonotone  rho1(A*) q-negative, i.e. A* monotone
  ///  ViaAdjointMaximal   additionally rho1(A*) maximally q-negative,
  ///                      i.e. A* maximally monotone
  enum class MaximalityMethod { ViaComplement, ViaAdjointMonotone, ViaAdjointMaximal };

  /// Throws NotMonotone when the relation is not monotone.
  bool is_maximal_monotone(MaximalityMethod method, const Tolerance& tol = {}) const;

 private:
  int n_;
  Subspace sub_;
};

}  // namespace ssdb
