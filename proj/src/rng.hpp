#pragma once

#include <cstdint>
#include <random>

namespace pspca {

// Inverse of the standard normal CDF (Wichura's AS 241, double precision).
// Defined for u in (0, 1).
double normal_quantile(double u);

// Deterministic standard-normal stream: mt19937_64 (algorithm fixed by the
// C++ standard) mapped through the inverse CDF. The uniform step uses the
// top 53 bits shifted into (0, 1), so the stream depends on nothing but the
// seed and the draw count.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {
    const std::uint64_t bits = rng_();
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform01()); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace pspca
