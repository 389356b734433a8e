#include "bsid/optim.hpp"

#include <cmath>
#include <string>

#include "bsid/errors.hpp"

namespace bsid {

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
    const std::size_t n = params.size();
    if (grads.size() != n || state.m.size() != n || state.v.size() != n) {
        throw ShapeError("adam_step: params " + std::to_string(n) + ", grads " +
                         std::to_string(grads.size()) + ", state " + std::to_string(state.m.size()));
    }
    state.t += 1;
    const double b1 = state.beta1;
    const double b2 = state.beta2;
    const double bias1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
    const double bias2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
    const double lr = state.learning_rate;
    const double eps = state.epsilon;
    double* __restrict__ p = params.data();
    const double* __restrict__ g = grads.data();
    double* __restrict__ m = state.m.data();
    double* __restrict__ v = state.v.data();
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
        const double mhat = m[i] / bias1;
        const double vhat = v[i] / bias2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace bsid
