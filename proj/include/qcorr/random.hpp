// random.hpp
// Deterministic PRNG and Poisson sampling for reproducible count simulation.
//
// The generator is splitmix64 (Steele et al.); identical seeds produce
// identical streams on every platform. Poisson variates use Knuth's
// multiplicative inversion applied in chunks of mean <= 64, which keeps the
// running uniform product above ~1e-28 and therefore exact in double
// precision for arbitrarily large means.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qcorr {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline long long poisson_sample(SplitMix64& rng, double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson_sample: negative mean");
    long long total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double chunk = remaining > 64.0 ? 64.0 : remaining;
        const double limit = std::exp(-chunk);
        double prod = 1.0;
        long long k = -1;
        do {
            ++k;
            prod *= rng.next_double();
        } while (prod > limit);
        total += k;
        remaining -= chunk;
    }
    return total;
}

} // namespace qcorr
