#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tdesign {

// Uniform double in [0, 1) from the top 53 bits of a mt19937_64 draw.
// Avoids std::uniform_real_distribution, whose output is
// implementation-defined; counts must be bit-identical across runs.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Multinomial draw by inverse CDF. Deterministic given the seed.
std::vector<std::int64_t> multinomial(std::span<const double> probabilities,
                                      std::int64_t shots, std::uint64_t seed);

}  // namespace tdesign
