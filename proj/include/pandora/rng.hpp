#pragma once

#include <cmath>
#include <cstdint>

namespace pandora {

// splitmix64 step/finalizer (Steele, Lea, Flood 2014). Small, fast, and good
// enough statistically for Monte Carlo sampling of discrete supports.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() { return splitmix64_next(state); }

  // Uniform in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Counter-based substream: the initial state is a pure function of
// (seed, trial, lane), so trial i's draws do not depend on how many draws
// trials 0..i-1 consumed, or on which worker ran them.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t trial,
                            std::uint64_t lane = 0) {
  std::uint64_t s = seed;
  s = splitmix64_next(s) ^ (trial * 0xd6e8feb86659fd93ULL);
  s = splitmix64_next(s) ^ (lane * 0xa5a5a5a5a5a5a5a5ULL);
  splitmix64_next(s);
  return SplitMix64{s};
}

// Neumaier compensated accumulator. Used wherever many terms of mixed
// magnitude are summed and the result feeds a tight tolerance.
struct Neumaier {
  long double sum = 0.0L;
  long double comp = 0.0L;

  void add(long double x) {
    long double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  long double value() const { return sum + comp; }
};

}  // namespace pandora
