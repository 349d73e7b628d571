#pragma once

#include <cstdint>
#include <random>

namespace frids {

// Deterministic random source used everywhere randomness is needed.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard, and the mappings below are written out by hand because the
// std::uniform_*_distribution adaptors are implementation defined and
// produce different streams on libstdc++ vs libc++. With these mappings a
// given seed yields bit-identical runs on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1): top 53 bits of the engine output.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n). Multiply-high mapping of one 64-bit word;
    // the bias is below n / 2^64 and irrelevant at our scales.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent child seeds from a base
// seed plus a stream tag (per-class GA streams, sampling stream).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace frids
