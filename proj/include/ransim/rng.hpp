#pragma once

#include <cstdint>
#include <random>

namespace ransim {

// splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with platform-stable integer/real mappings (the std
// distributions are implementation-defined, these are not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Inclusive bounds; Lemire's multiply-shift reduction.
  int uniform_int(int lo, int hi) {
    const uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t x = engine_();
    const auto wide = static_cast<unsigned __int128>(x) * range;
    return lo + static_cast<int>(wide >> 64);
  }

  // [lo, hi)
  double uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ransim
