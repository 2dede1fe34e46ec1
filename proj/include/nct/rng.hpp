#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace nct {

/**
 * Deterministic random source for seeded verification corpora.
 *
 * Wraps std::mt19937_64 but derives all variates through fixed arithmetic
 * (53-bit uniforms, Box-Muller normals) instead of the standard-library
 * distributions, whose output is implementation-defined.  Two runs with the
 * same seed therefore produce identical corpora on any conforming platform.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int integer(int lo, int hi) {
        const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
        int v = lo + static_cast<int>(uniform() * span);
        return v > hi ? hi : v;
    }

    /// Standard normal via Box-Muller; one spare value cached between calls.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Complex standard normal, E|z|^2 = 1.
    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re * 0.7071067811865475244, im * 0.7071067811865475244};
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace nct
