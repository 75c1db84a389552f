#ifndef POLYCAP_RNG_HPP
#define POLYCAP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace polycap {

// All randomized routines draw through these helpers instead of
// std::uniform_real_distribution, whose output is not pinned down by the
// standard.  mt19937_64 itself is bit-exact everywhere, so results are
// reproducible across compilers for a fixed seed.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    // Independent per-sample stream: sample i of a batch uses seed ^ i so
    // batches can be re-run or split without changing individual draws.
    static Rng for_sample(std::uint64_t seed, std::uint64_t i) { return Rng(seed ^ i); }

    double uniform01() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Box-Muller; deterministic, no state beyond the engine.
    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    std::uint64_t index(std::uint64_t n) { return gen() % n; }

    // Point on the simplex {d >= 0, sum d = 1} via normalized exponentials.
    std::vector<double> simplex(int n) {
        std::vector<double> d(n);
        double s = 0;
        for (auto& v : d) {
            v = -std::log(1.0 - uniform01() + 1e-300);
            s += v;
        }
        for (auto& v : d) v /= s;
        return d;
    }
};

} // namespace polycap

#endif
