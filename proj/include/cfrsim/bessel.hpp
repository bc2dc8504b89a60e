// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

namespace cfrsim {

/// Zero-order Bessel function of the first kind. Power series for small
/// arguments, periodic trapezoid quadrature of the integral form beyond;
/// accurate to ~1e-12. Used for fading autocorrelation validation, not in
/// any generation hot path.
double bessel_j0(double x);

} // namespace cfrsim
