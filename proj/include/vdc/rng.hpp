#pragma once

#include <cstdint>
#include <random>

namespace vdc {

// Seeded generator used everywhere randomness is needed. std::mt19937_64 has
// a fully specified output sequence, and the mappings below avoid
// std::uniform_*_distribution (whose output is implementation-defined), so
// identical seeds give identical values on every platform.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, 1), 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // +1 or -1.
    int sign() { return (gen_() >> 63) ? -1 : 1; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace vdc
