#ifndef MEASUREGRAPH_RNG_HPP
#define MEASUREGRAPH_RNG_HPP

#include <cstdint>
#include <limits>

namespace measuregraph {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed) noexcept { return mix64(seed); }

// Child stream key for (seed, a, b, ...). Distinct index tuples give independent streams,
// so per-edge draws do not depend on traversal order or thread count.
template <class... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, Rest... rest) noexcept {
    return derive_seed(mix64(seed ^ mix64(a + 0x632be59bd9b4e019ULL)), static_cast<std::uint64_t>(rest)...);
}

// Counter-based generator: output n is mix64(key + n * gamma). Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    // uniform on [0, 1)
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1]
    double uniform_pos() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    Rng split(std::uint64_t index) const noexcept { return Rng(key_ ^ mix64(index + 0x2545f4914f6cdd1dULL)); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace measuregraph

#endif
