#include "trmt/rng.hpp"

#include <cmath>

namespace trmt {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id),
      engine_(mix64(mix64(seed) ^ mix64(stream_id ^ 0xa0761d6478bd642fULL))) {}

RngStream RngStream::substream(std::uint64_t child) const {
    return RngStream(seed_, mix64(stream_id_) ^ mix64(child ^ 0xe7037ed1a0b428dbULL));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RngStream::uniform_int(int n) {
    // rejection from the top to stay unbiased
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % un);
}

double RngStream::normal() {
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace trmt
