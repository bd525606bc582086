#ifndef SPARSE_ATSP_RNG_HPP
#define SPARSE_ATSP_RNG_HPP

#include <cstdint>

namespace sparse_atsp {

// splitmix64; chosen over <random> engines because the byte streams (and hence
// generated instances) must be identical across platforms and standard library
// implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) via rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t rem = (0ULL - bound) % bound;  // 2^64 mod bound
    std::uint64_t r;
    do {
      r = next();
    } while (r > ~rem);  // reject the top `rem` values
    return r % bound;
  }

  // Inclusive range draw; lo <= hi required.
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

 private:
  std::uint64_t state_;
};

}  // namespace sparse_atsp

#endif
