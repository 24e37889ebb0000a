#pragma once

#include <cstdint>

namespace keller {

/// Deterministic splitmix64 stream; identical across platforms.
///
/// Trial seeds are derived as Rng::for_trial(seed, index), so independent
/// trials can run in any order (or concurrently) and still reproduce.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        return Rng(a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [lo, hi], inclusive; rejection sampling, no platform drift.
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % span);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit && span > 1);
        return lo + static_cast<long>(v % span);
    }

    bool coin() { return next_u64() & 1; }

private:
    std::uint64_t state_;
};

} // namespace keller
