#include "bsid/rng.hpp"

#include <cmath>
#include <numbers>

#include "bsid/errors.hpp"

namespace bsid {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    // pcg32 initialization: distinct seeds land in distinct streams.
    inc_ = (splitmix64(seed ^ 0x5851f42d4c957f2dULL) << 1u) | 1u;
    state_ = 0;
    next_u32();
    state_ += splitmix64(seed);
    next_u32();
}

std::uint32_t Rng::next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double Rng::uniform() {
    // 53-bit mantissa, offset by half an ulp so 0 and 1 are never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ParamError("Rng::below: n must be >= 1");
    if (n == 1) return 0;
    // Rejection to remove modulo bias.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x <= limit) return x % n;
    }
}

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::child(std::uint64_t label) const {
    return Rng(splitmix64(splitmix64(seed_ ^ 0xda3e39cb94b95bdbULL) ^ label));
}

Rng Rng::child(std::string_view label) const { return child(fnv1a64(label)); }

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) throw ParamError("sample_without_replacement: k > n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(below(n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

double gamma_sample(Rng& rng, double shape) {
    if (shape <= 0.0) throw ParamError("gamma_sample: shape must be > 0");
    if (shape < 1.0) {
        const double g = gamma_sample(rng, shape + 1.0);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double beta_sample(Rng& rng, double alpha, double beta) {
    if (alpha <= 0.0 || beta <= 0.0) {
        throw ParamError("beta_sample: shape parameters must be > 0");
    }
    double draw;
    if (alpha < 1.0 && beta < 1.0) {
        // Johnk: accept (u^(1/a), v^(1/b)) pairs inside the simplex.
        for (;;) {
            const double x = std::pow(rng.uniform(), 1.0 / alpha);
            const double y = std::pow(rng.uniform(), 1.0 / beta);
            if (x + y <= 1.0 && x + y > 0.0) {
                draw = x / (x + y);
                break;
            }
        }
    } else {
        const double ga = gamma_sample(rng, alpha);
        const double gb = gamma_sample(rng, beta);
        draw = ga / (ga + gb);
    }
    // Keep the draw strictly inside the open interval.
    constexpr double kEps = 0x1.0p-53;
    if (draw < kEps) draw = kEps;
    if (draw > 1.0 - kEps) draw = 1.0 - kEps;
    return draw;
}

}  // namespace bsid
