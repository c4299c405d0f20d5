#pragma once

#include <array>
#include <cstdint>

namespace sgf {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Philox4x32 with 10 rounds.  A pure function of (counter, key), which is
// what makes every noise increment addressable: no generator state, no
// ordering constraints, identical streams on every platform.
struct Philox4x32 {
  static std::array<uint32_t, 4> block(std::array<uint32_t, 4> counter,
                                       std::array<uint32_t, 2> key);
};

// Quantile function of the standard normal distribution (Wichura's
// double-precision rational approximations).  Rejects p outside (0, 1).
double inverse_normal_cdf(double p);

// Maps 64 random bits to a standard normal deviate through a uniform in
// the open interval (0,1).  The uniform grid is symmetric about 1/2, so
// the sampled distribution has exactly zero mean.
double standard_normal_from_bits(uint64_t bits);

// One standard normal deviate addressed by (key, a 96-bit counter).
double counter_normal(uint64_t key, uint64_t ctr_lo, uint32_t ctr_hi);

}  // namespace sgf
