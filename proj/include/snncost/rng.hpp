#pragma once

#include <cstdint>
#include <random>

namespace snncost {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-stream seed derivation. Row k of a sweep keeps its seed even when
// other rows are added or removed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

// All randomness in the library flows through explicitly seeded instances
// of this generator; there is no global RNG state anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
    }

    bool coin() { return uniform01() < 0.5; }

private:
    std::mt19937_64 gen_;
};

} // namespace snncost
