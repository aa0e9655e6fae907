#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace esmam {

/// Seeded pseudo-random stream shared by one mining run.
///
/// The generator is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard, and all derived draws (uniform doubles, bounded integers,
/// exponentials, weighted choices) are implemented here rather than with
/// std::*_distribution, so identical seeds reproduce identical runs across
/// standard libraries and versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), rejection-sampled (unbiased).
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_int: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = gen_();
            if (x >= threshold) return x % n;
        }
    }

    /// Exponential with the given scale (mean).
    double exponential(double scale) { return -scale * std::log1p(-uniform01()); }

    /// Index drawn proportionally to non-negative weights; walks weights in
    /// order, so results are reproducible. Returns -1 when total mass is 0.
    long weighted_choice(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) return -1;
        const double r = uniform01() * total;
        double cum = 0.0;
        long last_positive = -1;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            cum += weights[i];
            last_positive = static_cast<long>(i);
            if (r < cum) return last_positive;
        }
        return last_positive;  // guards against rounding at the top end
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace esmam
