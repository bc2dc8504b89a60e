// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/bessel.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

namespace cfrsim {

double bessel_j0(double x) {
    x = std::fabs(x);
    if (x <= 12.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (std::size_t k = 1; k <= 64; ++k) {
            term *= -q / (double(k) * double(k));
            sum += term;
            if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1e-300))
                break;
        }
        return sum;
    }
    // J0(x) = (1/2pi) * integral over the full circle of cos(x sin t);
    // the equispaced rule converges spectrally once the node count clears
    // the oscillation scale
    const std::size_t nodes = std::size_t(3.0 * x) + 40;
    const double step = 2.0 * std::numbers::pi / double(nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes; ++i)
        sum += std::cos(x * std::sin(double(i) * step));
    return sum / double(nodes);
}

} // namespace cfrsim
