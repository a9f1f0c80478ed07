#pragma once

#include <cstdint>
#include <random>

namespace curiosity {

// splitmix64 finalizer; used to derive well-separated seeds from (master, counter).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Named RNG substreams of a run. Each consumer owns its stream, so adding or
// removing one method never perturbs what another one sees.
enum class Stream : std::uint64_t {
    EnvPatterns = 1,
    EnvNoise = 2,
    WmInit = 3,
    CriticInit = 4,
    RndInit = 5,
    Policy = 6,
};

inline std::uint64_t stream_seed(std::uint64_t master, Stream s) {
    return mix64(master ^ (static_cast<std::uint64_t>(s) * 0xa0761d6478bd642full));
}

// mt19937_64 with hand-rolled uniform draws. The standard engine has a fully
// specified output sequence, but std:: distributions do not; doing the
// conversions ourselves keeps logs byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    bool bernoulli(double p) { return u01() < p; }

    // One random bit; unbiased and cheaper than bernoulli(0.5).
    double bit() { return static_cast<double>(next_u64() >> 63); }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        auto i = static_cast<std::size_t>(u01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace curiosity
