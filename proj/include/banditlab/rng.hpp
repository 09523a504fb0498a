#pragma once

#include <cstdint>

namespace banditlab {

// PCG-XSH-RR 64/32 with an explicit stream selector (O'Neill's pcg32).
// Chosen over the <random> engines because replications need cheap,
// independent streams keyed by (seed, stream_id): every odd increment gives a
// distinct full-period sequence, so a replication's draws depend only on the
// pair and never on how work is split across threads.
class Pcg32 {
 public:
  Pcg32(std::uint64_t seed, std::uint64_t stream_id) { reseed(seed, stream_id); }

  void reseed(std::uint64_t seed, std::uint64_t stream_id) {
    seed_ = seed;
    stream_id_ = stream_id;
    state_ = 0u;
    inc_ = (stream_id << 1u) | 1u;
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    std::uint64_t hi = next_u32();
    std::uint64_t lo = next_u32();
    return static_cast<double>(((hi << 32u) | lo) >> 11u) * 0x1.0p-53;
  }

  // Bernoulli draw; p outside [0, 1] saturates to always-0 / always-1.
  double next_bernoulli(double p) { return next_double() < p ? 1.0 : 0.0; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
};

}  // namespace banditlab
