#ifndef MGC_RNG_HPP
#define MGC_RNG_HPP

#include <cstdint>

namespace mgc {

/// Small deterministic generator (splitmix64). We roll our own uniform
/// mapping instead of <random> distributions so that identical seeds give
/// bit-identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    /// +1 or -1 with equal probability.
    double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

    /// Decorrelated stream for (seed, stream-index), e.g. one per trial.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        mix.next_u64();
        return mix.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace mgc

#endif
