#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace sforge {

// Seeded mt19937_64 with hand-rolled draw functions. std::uniform_*
// distributions are not bit-identical across standard libraries; these
// are, which keeps generated instances byte-stable everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Inclusive, unbiased via rejection.
  int uniform_int(int lo, int hi) {
    uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    if (range == 0) return static_cast<int>(eng_());  // full 32-bit span
    uint64_t limit = range * (~uint64_t{0} / range);
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<int>(static_cast<int64_t>(lo) +
                            static_cast<int64_t>(x % range));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(0, static_cast<int>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from {0, ..., n-1}, ascending.
  std::vector<int> sample_indices(int n, int k);

 private:
  std::mt19937_64 eng_;
};

inline std::vector<int> Rng::sample_indices(int n, int k) {
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
  shuffle(all);
  all.resize(static_cast<size_t>(k < n ? k : n));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace sforge
