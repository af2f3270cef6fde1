#pragma once

#include <cmath>

#include "ssdb/errors.hpp"

namespace ssdb {

/// Tagged extended real: a finite double, +infinity, or -infinity.
///
/// Convex-analytic values (function evaluations, conjugates, infima over
/// subspaces) are genuinely extended-real valued. We keep the infinities as
/// tags rather than IEEE infinities so they can never leak into linear
/// algebra; comparisons against them are explicit at the call sites.
class ExtReal {
 public:
  ExtReal() : state_(State::Finite), value_(0.0) {}

  ExtReal(double v) : state_(State::Finite), value_(v) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "finite ExtReal constructed from non-finite double");
    }
  }

  static ExtReal pos_inf() { return ExtReal(State::PosInf); }
  static ExtReal neg_inf() { return ExtReal(State::NegInf); }

  bool finite() const { return state_ == State::Finite; }
  bool pos_infinite() const { return state_ == State::PosInf; }
  bool neg_infinite() const { return state_ == State::NegInf; }

  /// Finite payload; throws if the value is an infinity.
  double value() const {
    if (!finite()) {
      throw Error(ErrorCode::InvalidArgument, "value() on an infinite ExtReal");
    }
    return value_;
  }

  bool same_kind(const ExtReal& other) const { return state_ == other.state_; }

 private:
  enum class State { Finite, PosInf, NegInf };

  explicit ExtReal(State s) : state_(s), value_(0.0) {}

  State state_;
  double value_;
};

}  // namespace ssdb
