#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sparsefolio/errors.hpp"

namespace sparsefolio {

// Deterministic sampler over mt19937_64. All variate transforms are written
// out explicitly so that a fixed seed yields the same stream on every
// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform on (0,1); never returns 0 or 1.
    double uniform() {
        const std::uint64_t bits = gen_() >> 11;  // top 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Box-Muller, one variate per call.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi_ * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Marsaglia-Tsang; `rate` parameterization (mean = shape/rate).
    double gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0)) {
            throw BadConfig("gamma sampler needs shape > 0 and rate > 0");
        }
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

    // scale parameterization: X ~ InvGamma(shape, scale), E[X] = scale/(shape-1).
    double inv_gamma(double shape, double scale) { return scale / gamma(shape, 1.0); }

    // Michael-Schucany-Haas. `mu` is the mean, `lambda` the shape.
    double inv_gaussian(double mu, double lambda) {
        const double z = normal();
        const double v = z * z;
        const double x = mu + mu * mu * v / (2.0 * lambda) -
                         mu / (2.0 * lambda) * std::sqrt(4.0 * mu * lambda * v + mu * mu * v * v);
        const double u = uniform();
        if (u <= mu / (mu + x)) return x;
        return mu * mu / x;
    }

private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
    std::mt19937_64 gen_;
};

}  // namespace sparsefolio
