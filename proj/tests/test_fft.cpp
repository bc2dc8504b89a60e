// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "doctest.h"

#include <complex>
#include <vector>

#include "cfrsim/bessel.hpp"
#include "cfrsim/fft.hpp"
#include "cfrsim/rng.hpp"

using cfrsim::cplx;

namespace {

std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t m = 0; m < n; ++m)
            acc += x[m] * std::polar(1.0, sign * 2.0 * 3.14159265358979323846 * double(k) *
                                              double(m) / double(n));
        out[k] = acc / std::sqrt(double(n));
    }
    return out;
}

std::vector<cplx> random_vec(cfrsim::Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& x : v)
        x = {rng.normal(), rng.normal()};
    return v;
}

} // namespace

TEST_CASE("forward transform matches the naive definition") {
    cfrsim::Rng rng(42);
    for (std::size_t n : {std::size_t(2), std::size_t(8), std::size_t(16), std::size_t(12),
                          std::size_t(31), std::size_t(100)}) {
        const cfrsim::Fft fft(n);
        const std::vector<cplx> x = random_vec(rng, n);
        const std::vector<cplx> got = fft.forward(x);
        const std::vector<cplx> want = naive_dft(x, -1);
        CHECK(cfrsim::max_abs_diff(got, want) < 1e-10);
    }
}

TEST_CASE("inverse undoes forward and matches the conjugate definition") {
    cfrsim::Rng rng(43);
    for (std::size_t n : {std::size_t(4), std::size_t(64), std::size_t(24), std::size_t(17)}) {
        const cfrsim::Fft fft(n);
        const std::vector<cplx> x = random_vec(rng, n);
        CHECK(cfrsim::max_abs_diff(fft.inverse(fft.forward(x)), x) < 1e-12);
        CHECK(cfrsim::max_abs_diff(fft.inverse(x), naive_dft(x, +1)) < 1e-10);
    }
}

TEST_CASE("transform is unitary: norms are preserved") {
    cfrsim::Rng rng(44);
    for (std::size_t n : {std::size_t(16), std::size_t(37)}) {
        const cfrsim::Fft fft(n);
        const std::vector<cplx> x = random_vec(rng, n);
        CHECK(cfrsim::norm2(fft.forward(x)) == doctest::Approx(cfrsim::norm2(x)).epsilon(1e-12));
    }
}

TEST_CASE("impulse transforms to a flat spectrum") {
    const cfrsim::Fft fft(8);
    std::vector<cplx> x(8, cplx{});
    x[0] = 1.0;
    const std::vector<cplx> s = fft.forward(x);
    for (const cplx& v : s)
        CHECK(std::abs(v - cplx{1.0 / std::sqrt(8.0), 0.0}) < 1e-14);
}

TEST_CASE("dense Fourier matrix is unitary and matches the engine") {
    const std::size_t n = 16;
    const cfrsim::CMatrix f = cfrsim::fourier_matrix(n);
    const cfrsim::CMatrix eye = f * f.adjoint();
    CHECK(cfrsim::max_abs_diff(eye, cfrsim::CMatrix::identity(n)) < 1e-13);

    cfrsim::Rng rng(45);
    const std::vector<cplx> x = random_vec(rng, n);
    const cfrsim::Fft fft(n);
    CHECK(cfrsim::max_abs_diff(cfrsim::mat_vec(f, x), fft.forward(x)) < 1e-12);
}

TEST_CASE("size mismatch and zero size are rejected") {
    CHECK_THROWS_AS(cfrsim::Fft(0), std::invalid_argument);
    const cfrsim::Fft fft(8);
    CHECK_THROWS_AS(fft.forward(std::vector<cplx>(7)), std::invalid_argument);
}

TEST_CASE("bessel_j0 reproduces reference values") {
    CHECK(cfrsim::bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cfrsim::bessel_j0(0.5) == doctest::Approx(0.9384698072408129).epsilon(1e-10));
    CHECK(cfrsim::bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-10));
    CHECK(cfrsim::bessel_j0(2.0) == doctest::Approx(0.2238907791412357).epsilon(1e-10));
    CHECK(cfrsim::bessel_j0(5.0) == doctest::Approx(-0.1775967713143383).epsilon(1e-10));
    CHECK(cfrsim::bessel_j0(10.0) == doctest::Approx(-0.2459357644513483).epsilon(1e-10));
    CHECK(cfrsim::bessel_j0(20.0) == doctest::Approx(0.1670246643405832).epsilon(1e-10));
    // first zero
    CHECK(std::abs(cfrsim::bessel_j0(2.404825557695773)) < 1e-12);
    // even function
    CHECK(cfrsim::bessel_j0(-5.0) == doctest::Approx(cfrsim::bessel_j0(5.0)).epsilon(1e-14));
    // series and quadrature branches agree at the crossover point
    CHECK(std::abs(cfrsim::bessel_j0(12.0) - cfrsim::bessel_j0(12.000000001)) < 1e-8);
}

TEST_CASE("rng streams are deterministic and derived streams differ") {
    cfrsim::Rng a(123);
    cfrsim::Rng b(123);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next() == b.next());
    CHECK(cfrsim::Rng::derive(1, 0) != cfrsim::Rng::derive(1, 1));
    CHECK(cfrsim::Rng::derive(1, 0) != cfrsim::Rng::derive(2, 0));
}

TEST_CASE("rng normal moments are sane") {
    cfrsim::Rng rng(7);
    double m1 = 0.0;
    double m2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        m1 += x;
        m2 += x * x;
    }
    m1 /= n;
    m2 /= n;
    CHECK(std::abs(m1) < 0.01);
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));

    cplx cm{};
    double cp = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx z = rng.cnormal(2.0);
        cm += z;
        cp += std::norm(z);
    }
    CHECK(std::abs(cm) / double(n) < 0.01);
    CHECK(cp / n == doctest::Approx(2.0).epsilon(0.02));
}
