#pragma once

#include <cstdint>

namespace hlpn {

// splitmix64 generator. Small, fast, and bit-identical on every platform,
// which is what the reproducibility contract needs; statistical quality is
// more than enough for picking transitions.
class rng {
 public:
  explicit rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n). Multiply-shift, no rejection loop: the bias is
  // below 2^-32 for any n that fits a typical enabling set and the result is
  // identical everywhere.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Seed of run `run_index` in a batch with master seed `master_seed`.
// Frozen scheme: one splitmix64 step over a weyl-offset index. Changing this
// would silently invalidate recorded traces, so don't.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                     std::uint64_t run_index) {
  rng r(master_seed ^ (0xa0761d6478bd642full +
                       run_index * 0xe7037ed1a0b428dbull));
  return r.next();
}

}  // namespace hlpn
