#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ffharm {

// Deterministic, platform-independent generator (splitmix64). The standard
// <random> distributions are implementation-defined, which would break the
// "byte-identical re-run" contract across toolchains, so we roll the few
// primitives we need by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    std::complex<double> unit_phase() {
        double t = 2.0 * 3.14159265358979323846 * uniform();
        return {std::cos(t), std::sin(t)};
    }

    // Independent stream for a parallel task; mixing the task id through
    // splitmix keeps streams uncorrelated and scheduling-independent.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        Rng mixer(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
        mixer.next_u64();
        return Rng(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

// FNV-1a over arbitrary bytes; used for witness digests and the CLI cache key.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xCBF29CE484222325ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

}
