#include "tdesign/random.hpp"

#include <algorithm>

namespace tdesign {

std::vector<std::int64_t> multinomial(std::span<const double> probabilities,
                                      std::int64_t shots, std::uint64_t seed) {
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf[i] = acc;
  }
  if (!cdf.empty()) cdf.back() = std::max(cdf.back(), 1.0);

  UniformSource rng(seed);
  std::vector<std::int64_t> counts(probabilities.size(), 0);
  for (std::int64_t s = 0; s < shots; ++s) {
    double u = rng.next();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return counts;
}

}  // namespace tdesign
