#pragma once

#include <cstdint>
#include <random>

namespace tvbar {

// mt19937_64 with an explicit bits-to-double map, so streams are identical
// across standard libraries (uniform_real_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // uniform in [-a, a)
    double symmetric(double a) { return a * (2.0 * uniform01() - 1.0); }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace tvbar
