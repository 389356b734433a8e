#pragma once

#include <functional>
#include <vector>

namespace bsid {

// Central-difference gradient estimate, component-wise.
inline std::vector<double> finite_difference_grad(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
    std::vector<double> grad(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double fp = f(x);
        x[i] = orig - h;
        const double fm = f(x);
        x[i] = orig;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace bsid
