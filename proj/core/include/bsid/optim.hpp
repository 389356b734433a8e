#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bsid {

// Adam first/second moment state for one parameter vector.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t t = 0;
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    AdamState() = default;
    AdamState(std::size_t n, double lr)
        : m(n, 0.0), v(n, 0.0), learning_rate(lr) {}
};

// One bias-corrected Adam update, in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

}  // namespace bsid
