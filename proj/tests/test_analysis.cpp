// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "cfrsim/analysis.hpp"
#include "cfrsim/channel.hpp"
#include "cfrsim/freq_sim.hpp"
#include "cfrsim/rng.hpp"

using cfrsim::cplx;
using cfrsim::OfdmConfig;
using cfrsim::PowerDelayProfile;
using cfrsim::ToeplitzSpectrum;

namespace {

std::vector<cplx> random_isi_row(cfrsim::Rng& rng, std::size_t n, std::size_t excess) {
    std::vector<cplx> row(n, cplx{});
    for (std::size_t k = n - excess; k < n; ++k)
        row[k] = {rng.normal(), rng.normal()};
    return row;
}

} // namespace

TEST_CASE("mean interference power: zero row gives zero at every offset") {
    const std::vector<cplx> row(16, cplx{});
    for (std::size_t offset = 1; offset < 16; ++offset)
        CHECK(cfrsim::expected_isi_power(row, offset) == 0.0);
}

TEST_CASE("mean interference power rejects the diagonal offset") {
    const std::vector<cplx> row(16, cplx{1.0, 0.0});
    CHECK_THROWS_AS(cfrsim::expected_isi_power(row, 0), std::invalid_argument);
    CHECK_THROWS_AS(cfrsim::expected_isi_power(row, 16), std::invalid_argument);
}

TEST_CASE("mean interference power: two-point hand example") {
    // row [0, 1]: the transformed matrix is [[0.5, -0.5], [0.5, -0.5]],
    // so the squared off-diagonal magnitude at offset 1 averages to 0.25
    const std::vector<cplx> row{cplx{}, cplx{1.0, 0.0}};
    CHECK(cfrsim::expected_isi_power(row, 1) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("mean interference power equals the exact cyclic row average") {
    cfrsim::Rng rng(1);
    const std::size_t n = 16;
    const std::vector<cplx> row = random_isi_row(rng, n, 5);
    const ToeplitzSpectrum phi = cfrsim::toeplitz_dft(cfrsim::TriangularToeplitz(row));
    for (std::size_t offset = 1; offset < n; ++offset) {
        double avg = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            avg += std::norm(phi.entry(r, (r + offset) % n));
        avg /= double(n);
        const double predicted = cfrsim::expected_isi_power(row, offset);
        CHECK(std::abs(predicted - avg) <= 1e-9 * std::abs(avg));
    }
}

TEST_CASE("interference profile peaks next to the diagonal and is symmetric") {
    OfdmConfig cfg;
    cfg.fft_size = 128;
    cfg.cp_len = 9;
    cfg.sample_interval = 1.0 / (15000.0 * 128.0);
    PowerDelayProfile pdp;
    pdp.taps = {{0, 0.6}, {20, 0.02}, {25, 0.01}, {29, 0.005}};
    const auto profile = cfrsim::isi_power_profile(pdp, cfg);

    CHECK(profile.offsets.front() == 1);
    const double peak = profile.power.front();
    for (double p : profile.power)
        CHECK(p <= peak);
    for (std::size_t k = 1; k < 128; ++k) {
        const double a = profile.power[k - 1];           // offset k
        const double b = profile.power[128 - k - 1];     // offset N-k
        CHECK(std::abs(a - b) <= 1e-9 * std::max(a, b));
    }
    CHECK(profile.reference_power == doctest::Approx(0.635).epsilon(1e-12));
}

TEST_CASE("undistorted subcarrier power") {
    OfdmConfig cfg;
    cfg.fft_size = 16;
    cfg.cp_len = 3;
    cfg.sample_interval = 1e-6;

    SUBCASE("single unit tap gives 1/N") {
        PowerDelayProfile pdp;
        pdp.taps = {{0, 1.0}};
        auto ch = cfrsim::generate_fading(pdp, {0.0, 2}, 1, cfg);
        ch.coeffs[0][0] = 1.0;
        CHECK(cfrsim::undistorted_power(ch, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    }

    SUBCASE("matches the dense per-subcarrier response average") {
        PowerDelayProfile pdp;
        pdp.taps = {{0, 1.0}, {4, 0.4}, {9, 0.1}};
        const auto ch = cfrsim::generate_fading(pdp, {12.0, 3}, 1, cfg);
        const auto bm = cfrsim::build_block_matrices(ch, 0);
        const auto f = cfrsim::fourier_matrix(16);
        const auto g = f * bm.dense_h() * f.adjoint();
        double mean_gain = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
            mean_gain += std::norm(g(i, i));
        mean_gain /= 16.0;
        CHECK(cfrsim::undistorted_power(ch, 0) ==
              doctest::Approx(mean_gain / 16.0).epsilon(1e-10));
    }
}

TEST_CASE("signal-to-error ratio") {
    std::vector<cplx> a{cplx{1.0, 0.0}, cplx{0.0, 2.0}, cplx{-1.0, 1.0}};

    SUBCASE("identical streams saturate to +inf") {
        CHECK(std::isinf(cfrsim::ser_db(a, a)));
    }
    SUBCASE("ten percent scalar perturbation gives 20 dB") {
        std::vector<cplx> b(a);
        for (cplx& v : b)
            v *= 1.1;
        CHECK(cfrsim::ser_db(a, b) == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("zero reference and length mismatch are errors") {
        const std::vector<cplx> zero(3, cplx{});
        CHECK_THROWS_AS(cfrsim::ser_db(zero, a), std::domain_error);
        CHECK_THROWS_AS(cfrsim::ser_db(a, std::vector<cplx>(2)), std::invalid_argument);
    }
}

TEST_CASE("normality statistic matches a hand-computed value") {
    // x = 1..10: mean 5.5, m2 = 8.25, m3 = 0, m4 = 120.8625,
    // excess = m4/m2^2 - 3 = -202/165, statistic = (10/24)*(202/165)^2
    std::vector<double> x(10);
    for (int i = 0; i < 10; ++i)
        x[i] = double(i + 1);
    // below the minimum sample size by design: extend by repeating the
    // pattern twice keeps the moments identical
    std::vector<double> xx;
    for (int rep = 0; rep < 2; ++rep)
        xx.insert(xx.end(), x.begin(), x.end());
    const auto r = cfrsim::jarque_bera(xx);
    const double expected = 20.0 / 6.0 * ((202.0 / 165.0) * (202.0 / 165.0) / 4.0);
    CHECK(r.statistic == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(std::exp(-0.5 * expected)).epsilon(1e-12));
    CHECK(r.sample_size == 20);
}

TEST_CASE("normality test calibration on seeded samples") {
    SUBCASE("normal samples keep high p-values for nearly every seed") {
        int pass = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            cfrsim::Rng rng(seed);
            std::vector<double> x(100000);
            for (double& v : x)
                v = rng.normal();
            if (cfrsim::jarque_bera(x).p_value > 0.05)
                ++pass;
        }
        CHECK(pass >= 90); // nominal rejection rate is 5 percent
    }
    SUBCASE("uniform samples are rejected hard") {
        cfrsim::Rng rng(9);
        std::vector<double> x(100000);
        for (double& v : x)
            v = 2.0 * rng.uniform() - 1.0;
        CHECK(cfrsim::jarque_bera(x).p_value < 1e-3);
    }
    SUBCASE("degenerate and undersized samples are errors") {
        const std::vector<double> constant(30, 1.0);
        CHECK_THROWS_AS(cfrsim::jarque_bera(constant), std::domain_error);
        const std::vector<double> tiny(10, 0.0);
        CHECK_THROWS_AS(cfrsim::jarque_bera(tiny), std::invalid_argument);
    }
}

TEST_CASE("qam alphabets have unit average power") {
    for (std::size_t order : {std::size_t(4), std::size_t(16), std::size_t(64)}) {
        const auto points = cfrsim::qam_alphabet(order);
        CHECK(points.size() == order);
        double p = 0.0;
        for (const cplx& s : points)
            p += std::norm(s);
        CHECK(p / double(order) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cfrsim::qam_alphabet(8), std::invalid_argument);
}

TEST_CASE("residual interference samples") {
    cfrsim::Rng rng(4);
    const std::size_t n = 16;
    const ToeplitzSpectrum phi =
        cfrsim::toeplitz_dft(cfrsim::TriangularToeplitz(random_isi_row(rng, n, 5)));
    const auto alphabet = cfrsim::qam_alphabet(16);

    SUBCASE("full band leaves no residual") {
        const auto s = cfrsim::residual_isi_samples(phi, n / 2, 3, 100, alphabet, 42);
        for (const cplx& v : s)
            CHECK(v == cplx{});
    }

    SUBCASE("diagonal-only residual variance matches the out-of-band energy, every row") {
        for (std::size_t row = 0; row < n; ++row) {
            double expected = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != row)
                    expected += std::norm(phi.entry(row, k));
            const auto s = cfrsim::residual_isi_samples(phi, 0, row, 40000, alphabet, 43 + row);
            double var = 0.0;
            for (const cplx& v : s)
                var += std::norm(v);
            var /= double(s.size());
            CHECK(var == doctest::Approx(expected).epsilon(0.08));
        }
    }

    SUBCASE("same seed reproduces, different seeds differ") {
        const auto a = cfrsim::residual_isi_samples(phi, 2, 3, 50, alphabet, 7);
        const auto b = cfrsim::residual_isi_samples(phi, 2, 3, 50, alphabet, 7);
        const auto c = cfrsim::residual_isi_samples(phi, 2, 3, 50, alphabet, 8);
        CHECK(cfrsim::max_abs_diff(a, b) == 0.0);
        CHECK(cfrsim::max_abs_diff(a, c) > 0.0);
    }
}

TEST_CASE("pooled complex normality test emits all three variants") {
    cfrsim::Rng rng(5);
    std::vector<cplx> z(50000);
    for (cplx& v : z)
        v = rng.cnormal(1.0);
    const auto r = cfrsim::jarque_bera_complex(z);
    CHECK(r.pooled.sample_size == 100000);
    CHECK(r.real_part.sample_size == 50000);
    CHECK(r.pooled.p_value > 0.01);
}

TEST_CASE("model accuracy is non-decreasing in the bandwidth on average") {
    // mean signal-to-error ratio over random channels grows with the band
    cfrsim::Rng rng(6);
    const std::size_t n = 64;
    const std::vector<std::size_t> bands{0, 2, 4, 8, 16, 32};
    std::vector<double> mean_ser(bands.size(), 0.0);
    const std::size_t realizations = 100;
    const auto alphabet = cfrsim::qam_alphabet(16);

    for (std::size_t r = 0; r < realizations; ++r) {
        const ToeplitzSpectrum phi =
            cfrsim::toeplitz_dft(cfrsim::TriangularToeplitz(random_isi_row(rng, n, 9)));
        std::vector<cplx> z(n);
        for (cplx& v : z)
            v = alphabet[rng.index(alphabet.size())];
        const auto full = cfrsim::banded_multiply(phi, n / 2, z);
        for (std::size_t bi = 0; bi < bands.size(); ++bi) {
            const auto reduced = cfrsim::banded_multiply(phi, bands[bi], z);
            double ref2 = 0.0;
            double err2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                ref2 += std::norm(reduced[k]);
                err2 += std::norm(reduced[k] - full[k]);
            }
            mean_ser[bi] += 10.0 * std::log10(ref2 / err2);
        }
    }
    for (std::size_t bi = 1; bi < bands.size(); ++bi)
        CHECK(mean_ser[bi] >= mean_ser[bi - 1]);
}
