#pragma once

#include <cstdint>
#include <random>

#include "heis/point.hpp"

namespace heis {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// mt19937_64 with uniform doubles derived from raw bits, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}
    Rng(std::uint64_t seed, std::uint64_t stream)
        : gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 1))) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    std::uint64_t bits() { return gen_(); }

    HeisPoint in_box(const Box& box) {
        return {uniform(box.xmin, box.xmax), uniform(box.ymin, box.ymax),
                uniform(box.tmin, box.tmax)};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace heis
