#pragma once

#include <cmath>

#include "ssdb/errors.hpp"

namespace ssdb {

/// Numerical thresholds shared by every boolean-valued check.
///
/// `abs` enters absolute-plus-relative comparisons of the form
/// |residual| <= abs * (1 + magnitude of the inputs); `rank` is the
/// singular-value cutoff fraction used whenever a rank decision is made
/// (spans, null spaces, pseudoinverses). A singular value sigma is kept only
/// when sigma > rank * sigma_max, so ties at the cutoff drop the direction.
struct Tolerance {
  double abs;
  double rank;

  Tolerance(double abs_tol = 1e-9, double rank_tol = 1e-10) : abs(abs_tol), rank(rank_tol) {
    if (!(std::isfinite(abs) && std::isfinite(rank)) || abs < 0.0 || rank < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be finite and nonnegative");
    }
  }
};

}  // namespace ssdb
