#pragma once

#include <cstdint>
#include <random>

namespace ewi {

/// Seed used whenever a run does not provide one.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Uniform draws on [lo, hi) from std::mt19937_64, whose output sequence is
/// fixed by the C++ standard. The mapping takes the top 53 bits, so the
/// values are identical on every conforming platform (unlike
/// std::uniform_real_distribution).
class PortableUniform {
 public:
  explicit PortableUniform(std::uint64_t seed) : engine_(seed) {}

  double operator()(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ewi
