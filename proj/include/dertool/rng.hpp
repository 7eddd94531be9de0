#pragma once

#include <cstdint>

#include "dertool/rational.hpp"

namespace dertool {

// SplitMix64. Self-contained so that seeded runs are byte-identical across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Inclusive bounds; modulo bias is irrelevant at test scale.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat small_int(int maxabs) { return Rat(int_in(-maxabs, maxabs)); }

    Rat small_rat(int maxabs, int maxden) {
        return Rat(Int(int_in(-maxabs, maxabs)), Int(int_in(1, maxden)));
    }

    bool coin() { return next() & 1; }

    // Per-trial subseed: hash(master_seed, trial_index).
    static std::uint64_t mix(std::uint64_t master, std::uint64_t index) {
        Rng r(master ^ (0xA24BAED4963EE407ull * (index + 1)));
        return r.next();
    }

private:
    std::uint64_t s_;
};

} // namespace dertool
