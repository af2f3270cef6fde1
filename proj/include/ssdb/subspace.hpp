#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "ssdb/extended_real.hpp"
#include "ssdb/space.hpp"

namespace ssdb {

/// Outcome of the complement-based maximality criterion. When `maximal` is
/// false, `witness` holds a unit vector c in the q-orthogonal complement
/// with q(c) > 0; then A + span{c} is again q-positive, so c certifies that
/// A can be properly extended.
struct MaximalityCheck {
  bool maximal = false;
  std::optional<Vec> witness;
};

/// Outcome of the randomized extension oracle. One-sided: `non_maximal`
/// true comes with a validated witness, while false only means no witness
/// was found in the given number of trials.
struct OracleOutcome {
  bool non_maximal = false;
  std::optional<Vec> witness;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// A linear subspace of an SSDB space, stored as an orthonormal basis
/// (n x k, k = 0 encoding {0}). Subspaces compare equal when their
/// orthogonal projectors agree entrywise within tolerance.
class Subspace {
 public:
  /// Wraps an already orthonormal basis; validates B'B = I within tol.
  Subspace(Space space, Mat orthonormal_basis, const Tolerance& tol = {});

  /// Orthonormalizes the span of arbitrary generators (rank decided by the
  /// singular-value cutoff). An empty or all-zero generator set gives {0}.
  static Subspace span(const Space& space, const std::vector<Vec>& generators,
                       const Tolerance& tol = {});
  static Subspace span(const Space& space, std::initializer_list<Vec> generators,
                       const Tolerance& tol = {});
  static Subspace span(const Space& space, const Mat& generators, const Tolerance& tol = {});

  static Subspace zero(const Space& space);
  static Subspace whole(const Space& space);

  const Space& space() const { return space_; }
  int ambient_dim() const { return space_.dim(); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  Mat projector() const { return basis_ * basis_.transpose(); }

  /// The same subspace viewed inside another space of equal dimension
  /// (used to delegate q-negativity to q-positivity under negation).
  Subspace in_space(const Space& other) const;

  bool contains(const Vec& b, const Tolerance& tol = {}) const;

  /// q-orthogonal complement A0 = { b : ⌊A,b⌋ = 0 }, the null space of B'P.
  /// P is invertible, so dim A0 = n - dim A.
  Subspace q_complement(const Tolerance& tol = {}) const;

  /// For a linear subspace, pairwise q-positivity collapses to q >= 0 on A,
  /// i.e. positive semidefiniteness of the reduced form B'PB; tested as
  /// lambda_min >= -abs_tol * (1 + max|P|). {0} is q-positive.
  bool is_q_positive(const Tolerance& tol = {}) const;
  bool is_q_negative(const Tolerance& tol = {}) const;

  /// Exact infimum of q(a - b) over a in A, via the reduced quadratic
  /// z -> 1/2 z'Mz - z'r + q(b) with M = B'PB, r = B'Pb. Returns -inf when
  /// M has a negative eigenvalue or r has a component outside range(M);
  /// otherwise q(b) - 1/2 r'M^+r.
  ExtReal inf_q_over_translate(const Vec& b, const Tolerance& tol = {}) const;

  /// Complement criterion: A (q-positive) is maximally q-positive iff its
  /// q-complement is q-negative. Throws NotQPositive when the precondition
  /// fails. On a negative verdict the returned witness is the top
  /// eigenvector direction of q restricted to the complement.
  MaximalityCheck is_maximal_q_positive(const Tolerance& tol = {}) const;

  /// Mirror image under pairing negation. Throws NotQNegative.
  MaximalityCheck is_maximal_q_negative(const Tolerance& tol = {}) const;

  /// Randomized, seeded extension search, independent of the complement
  /// criterion: samples candidates c from a zero-mean Gaussian scaled by
  /// (1 + max|P|) and reports non-maximality when some c outside A has
  /// inf q(A - c) >= -abs_tol, so that A ∪ {c} is q-positive.
  /// Throws NotQPositive.
  OracleOutcome maximality_oracle(int trials, std::uint64_t seed, const Tolerance& tol = {}) const;

 private:
  Mat reduced_q_form() const;  // B'PB

  Space space_;
  Mat basis_;
};

Subspace sum(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Subspace intersection(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

/// Max-abs entry of the projector difference; <= abs_tol means equality.
double projector_distance(const Subspace& a, const Subspace& b);

/// A finite, nonempty list of points of an SSDB space. Unlike Subspace this
/// carries no linear structure, so positivity is checked pairwise.
struct PointSet {
  PointSet(Space space, std::vector<Vec> points);

  Space space;
  std::vector<Vec> points;
};

/// Pairwise q-positivity verdict for a point set. When it fails, `witness`
/// holds the indices of the most violating pair (first encountered wins
/// ties) and `worst_value` its q(b - c).
struct PairwiseCheck {
  bool positive = true;
  std::optional<std::pair<int, int>> witness;
  double worst_value = 0.0;
};

PairwiseCheck is_q_positive(const PointSet& points, const Tolerance& tol = {});

}  // namespace ssdb
