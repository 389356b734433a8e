#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace bsid {

// Deterministic PCG32-based generator. Identical seed gives an identical draw
// sequence on every platform. Streams split via child(): child seeds are a
// pure function of (parent seed, label), so parallel consumers can derive
// private streams without coordination.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform draw in the open interval (0,1).
    double uniform();
    double uniform(double lo, double hi);

    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);

    // Standard normal via Box-Muller (two uniforms per draw, no caching).
    double normal();

    Rng child(std::uint64_t label) const;
    Rng child(std::string_view label) const;

    std::uint64_t seed() const { return seed_; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t inc_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(std::string_view s);

// Beta(alpha, beta) sample strictly inside (0,1). Johnk's rejection method
// when both shapes are < 1, gamma-ratio otherwise.
double beta_sample(Rng& rng, double alpha, double beta);

// Gamma(shape, 1) via Marsaglia-Tsang squeeze; boosted for shape < 1.
double gamma_sample(Rng& rng, double shape);

}  // namespace bsid
