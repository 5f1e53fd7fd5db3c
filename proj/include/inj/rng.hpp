#ifndef INJ_RNG_HPP
#define INJ_RNG_HPP

#include <cstdint>

namespace inj {

// Splittable counter-based generator: output i is a pure function of
// (seed, i), so any worker can evaluate any position of the stream without
// shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + uniform(counter) * (hi - lo);
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Convenience sequential view over a CounterRng.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return rng_.uniform(next_++); }
    double uniform(double lo, double hi) { return rng_.uniform(next_++, lo, hi); }
    std::uint64_t bits() { return rng_.bits(next_++); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return bits() % n; }

private:
    CounterRng rng_;
    std::uint64_t next_ = 0;
};

} // namespace inj

#endif
