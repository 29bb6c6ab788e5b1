#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace chernoff {

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (key, counter), so parallel consumers agree bit-for-bit regardless of how
// the work is scheduled across threads.
struct PhiloxBlock {
  std::uint32_t x[4];
};

namespace detail {

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
  const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
  const std::uint32_t out[4] = {
      std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
      std::uint32_t(p1),
      std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
      std::uint32_t(p0),
  };
  for (int i = 0; i < 4; ++i) ctr[i] = out[i];
}

}  // namespace detail

inline PhiloxBlock philox4x32(std::uint64_t key, std::uint64_t ctr_hi,
                              std::uint64_t ctr_lo) {
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  std::uint32_t k[2] = {std::uint32_t(key), std::uint32_t(key >> 32)};
  std::uint32_t c[4] = {std::uint32_t(ctr_lo), std::uint32_t(ctr_lo >> 32),
                        std::uint32_t(ctr_hi), std::uint32_t(ctr_hi >> 32)};
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    detail::philox_round(c, k);
  }
  return PhiloxBlock{{c[0], c[1], c[2], c[3]}};
}

// Uniform in (0, 1]: 53 random bits, never exactly zero.
inline double philox_uniform(std::uint64_t key, std::uint64_t ctr_hi,
                             std::uint64_t ctr_lo) {
  const PhiloxBlock b = philox4x32(key, ctr_hi, ctr_lo);
  const std::uint64_t bits = (std::uint64_t(b.x[0]) << 32) | b.x[1];
  return double((bits >> 11) + 1) * 0x1.0p-53;
}

// Uniform in the open interval (0, 1).
inline double philox_uniform_open(std::uint64_t key, std::uint64_t ctr_hi,
                                  std::uint64_t ctr_lo) {
  const PhiloxBlock b = philox4x32(key, ctr_hi, ctr_lo);
  const std::uint64_t bits = (std::uint64_t(b.x[0]) << 32) | b.x[1];
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal keyed by (key, counter) via Box-Muller on one block.
inline double philox_gaussian(std::uint64_t key, std::uint64_t ctr_hi,
                              std::uint64_t ctr_lo) {
  const PhiloxBlock b = philox4x32(key, ctr_hi, ctr_lo);
  const std::uint64_t bits0 = (std::uint64_t(b.x[0]) << 32) | b.x[1];
  const std::uint64_t bits1 = (std::uint64_t(b.x[2]) << 32) | b.x[3];
  const double u1 = double((bits0 >> 11) + 1) * 0x1.0p-53;
  const double u2 = double(bits1 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Derives an independent sub-stream key from a master seed, one per named
// stage, so a run can document every stream it consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
  const PhiloxBlock b = philox4x32(master, 0x5eed5eedu, stream_id);
  return (std::uint64_t(b.x[0]) << 32) | b.x[2];
}

}  // namespace chernoff
