#pragma once

#include <cstdint>
#include <random>

namespace tfl {

// SplitMix64 finalizer. Used only to spread a master seed into independent
// engine seeds; the simulation engines themselves are mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for logical stream `stream` of a master seed. Stream 0..n-1 are the
// per-agent streams of a run; auxiliary generators use higher stream ids.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

// mt19937_64 plus the few draws the engine needs. std:: distributions are
// implementation-defined sequences, so the draws are spelled out here; a
// (seed, call sequence) pair reproduces bit-identically on any platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream for_stream(std::uint64_t master, std::uint64_t stream) {
        return RngStream(stream_seed(master, stream));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform index in [0, bound) via 128-bit multiply-shift.
    std::uint32_t uniform_index(std::uint32_t bound) {
        const auto wide =
            static_cast<unsigned __int128>(next_u64()) * bound;
        return static_cast<std::uint32_t>(wide >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_double() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tfl
