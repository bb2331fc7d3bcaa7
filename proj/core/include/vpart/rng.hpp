#pragma once

#include <cstdint>
#include <random>

namespace vpart {

// Seeded generator with a fixed output mapping, so generated instances are
// bit-identical across standard libraries. The engine is std::mt19937_64
// (fully specified by the standard); the std distributions are not, so the
// mappings to reals and integers are done here:
//   uniform01()        = (next >> 11) * 2^-53              in [0, 1)
//   uniform_int(lo,hi) = lo + floor(uniform01() * (hi-lo+1))
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi);
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vpart
