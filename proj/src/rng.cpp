#include "ssdb/rng.hpp"

#include <cmath>

#include "ssdb/errors.hpp"

namespace ssdb {

double GaussianRng::unit() {
  // 53 random mantissa bits: uniform on [0, 1) with full double resolution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal() {
  double u1 = 0.0;
  do {
    u1 = unit();
  } while (u1 <= 0.0);
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec GaussianRng::normal_vec(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

double GaussianRng::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "empty uniform range");
  return lo + (hi - lo) * unit();
}

int GaussianRng::uniform_int(int lo, int hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty integer range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const int value = lo + static_cast<int>(engine_() % span);
  return value;
}

}  // namespace ssdb
