#include "vpart/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vpart {

double Rng::uniform01() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return static_cast<double>(next() >> 11) * kScale;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
  const double span = static_cast<double>(hi - lo) + 1.0;
  auto offset = static_cast<std::int64_t>(std::floor(uniform01() * span));
  if (offset > hi - lo) offset = hi - lo;
  return lo + offset;
}

}  // namespace vpart
