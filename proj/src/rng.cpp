#include "spanorm/rng.hpp"

#include <algorithm>
#include <unordered_set>

namespace spanorm {

std::vector<std::uint64_t> KeyedRng::sample(std::uint64_t n, std::uint64_t k) {
  if (k > n) k = n;
  std::vector<std::uint64_t> out;
  if (k == n) {
    out.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t r = below(j + 1);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spanorm
