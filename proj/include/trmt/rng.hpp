#pragma once

#include <cstdint>
#include <random>

namespace trmt {

// Seeded random stream with named substreams. All randomness in the toolkit
// flows from one root (seed, stream_id) pair; substreams are derived by
// mixing, never by splitting engine state, so (seed, stream_id) alone pins a
// trajectory bit-for-bit. Gaussians use an explicit Box-Muller so output does
// not depend on the standard library's distribution internals.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Independent child stream; child indices may themselves be mixed ids.
    RngStream substream(std::uint64_t child) const;

    std::uint64_t next_u64();
    double uniform();              // [0, 1)
    int uniform_int(int n);        // {0, ..., n-1}, unbiased
    double normal();               // N(0, 1)

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used for substream derivation and checksums.
std::uint64_t mix64(std::uint64_t x);

}  // namespace trmt
