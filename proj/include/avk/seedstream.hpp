#pragma once

#include <cstdint>
#include <string_view>

namespace avk {

// Deterministic seeded RNG with labelled substream derivation. Draws are a
// pure function of (root seed, derivation path), identical across platforms
// and process runs; no global state. The generator is splitmix64.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t root) : state_(root) {}

    // Derive an independent child stream. Children with different labels
    // (or indices) never share draws with each other or with the parent.
    SeedStream sub(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a 64
        for (unsigned char ch : label) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        return SeedStream(finalize(state_ ^ finalize(h)));
    }

    SeedStream sub(std::uint64_t index) const {
        return SeedStream(finalize(state_ ^ finalize(index + kPhi)));
    }

    // splitmix64 step
    std::uint64_t next_u64() {
        state_ += kPhi;
        return finalize(state_);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    bool coin() { return (next_u64() & 1ull) != 0; }

private:
    static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ull;

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace avk
