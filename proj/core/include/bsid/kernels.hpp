#pragma once

#include <cmath>
#include <span>

#include "bsid/errors.hpp"
#include "bsid/matrix.hpp"

namespace bsid {

// exp(-gamma * ||x - y||^2), in (0, 1].
inline double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
    if (gamma <= 0.0) throw ParamError("rbf_kernel: gamma must be > 0");
    return std::exp(-gamma * squared_distance(x, y));
}

// gamma = 1 / (2 * length_scale^2)
inline double gamma_from_length_scale(double length_scale) {
    if (length_scale <= 0.0) throw ParamError("length scale must be > 0");
    return 1.0 / (2.0 * length_scale * length_scale);
}

}  // namespace bsid
