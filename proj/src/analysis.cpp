// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cfrsim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDbFloor = -3000.0; ///< clamp for powers below 1e-300
} // namespace

double expected_isi_power(const std::vector<cplx>& first_row, std::size_t offset) {
    const std::size_t n = first_row.size();
    if (n < 2)
        throw std::invalid_argument("expected_isi_power: dimension must be at least 2");
    if (offset == 0 || offset >= n)
        throw std::invalid_argument(
            "expected_isi_power: offset must lie in [1, N-1]; the diagonal is not covered");

    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(first_row[k]);
        if (p == 0.0)
            continue;
        // sin^2(pi*offset*k/N) depends on offset*k mod N only
        const std::size_t r = (offset * k) % n;
        const double s = std::sin(kPi * double(r) / double(n));
        acc += p * s * s;
    }
    const double edge = std::sin(kPi * double(offset) / double(n));
    return acc / (double(n) * double(n) * edge * edge);
}

IsiPowerProfile isi_power_profile(const PowerDelayProfile& pdp, const OfdmConfig& cfg) {
    cfg.validate();
    pdp.validate();
    const std::size_t n = cfg.fft_size;
    if (pdp.delay_spread() >= n)
        throw std::invalid_argument("isi_power_profile: delay spread must be below the FFT size");

    // RMS first row: sqrt of the average tap power at each exceeding position,
    // so the closed form evaluates the fading-ensemble mean
    std::vector<cplx> rms_row(n, cplx{});
    for (const auto& tap : pdp.taps)
        if (tap.delay > cfg.cp_len)
            rms_row[n - (tap.delay - cfg.cp_len)] += std::sqrt(tap.gain);

    IsiPowerProfile profile;
    profile.reference_power = pdp.total_power();
    profile.offsets.reserve(n - 1);
    profile.power.reserve(n - 1);
    profile.normalized_db.reserve(n - 1);
    for (std::size_t offset = 1; offset < n; ++offset) {
        profile.offsets.push_back(offset);
        const double p = expected_isi_power(rms_row, offset);
        profile.power.push_back(p);
        const double ratio = p / profile.reference_power;
        profile.normalized_db.push_back(ratio < 1e-300 ? kDbFloor : 10.0 * std::log10(ratio));
    }
    return profile;
}

double undistorted_power(const ChannelRealization& ch, std::size_t u) {
    if (u >= ch.symbol_count())
        throw std::out_of_range("undistorted_power: symbol index out of range");
    double acc = 0.0;
    for (const cplx& c : ch.coeffs[u])
        acc += std::norm(c);
    return acc / double(ch.cfg.fft_size);
}

double ser_db(const std::vector<cplx>& reduced, const std::vector<cplx>& complete) {
    if (reduced.size() != complete.size())
        throw std::invalid_argument("ser_db: streams must have equal length");
    double ref2 = 0.0;
    double err2 = 0.0;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        ref2 += std::norm(reduced[i]);
        err2 += std::norm(reduced[i] - complete[i]);
    }
    if (err2 == 0.0)
        return std::numeric_limits<double>::infinity();
    if (ref2 == 0.0)
        throw std::domain_error("ser_db: reference stream has zero norm");
    return 10.0 * std::log10(ref2 / err2);
}

JbResult jarque_bera(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 20)
        throw std::invalid_argument("jarque_bera: need at least 20 samples");

    double mean = 0.0;
    for (double x : samples)
        mean += x;
    mean /= double(n);

    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= double(n);
    m3 /= double(n);
    m4 /= double(n);
    if (!(m2 > 0.0) || !std::isfinite(m2))
        throw std::domain_error("jarque_bera: degenerate (constant) sample");

    const double skew = m3 / std::pow(m2, 1.5);
    const double excess = m4 / (m2 * m2) - 3.0;
    JbResult r;
    r.sample_size = n;
    r.statistic = double(n) / 6.0 * (skew * skew + excess * excess / 4.0);
    r.p_value = std::exp(-0.5 * r.statistic); // chi-square(2) tail
    return r;
}

JbComplexResult jarque_bera_complex(std::span<const cplx> samples) {
    std::vector<double> re(samples.size());
    std::vector<double> im(samples.size());
    std::vector<double> pooled(2 * samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        re[i] = samples[i].real();
        im[i] = samples[i].imag();
        pooled[i] = re[i];
        pooled[samples.size() + i] = im[i];
    }
    JbComplexResult r;
    r.real_part = jarque_bera(re);
    r.imag_part = jarque_bera(im);
    r.pooled = jarque_bera(pooled);
    return r;
}

std::vector<cplx> qam_alphabet(std::size_t order) {
    std::size_t side = 0;
    for (std::size_t s = 2; s <= 16; s *= 2)
        if (s * s == order)
            side = s;
    if (side == 0)
        throw std::invalid_argument("qam_alphabet: order must be 4, 16, 64 or 256");
    // unit average power: levels +-1, +-3, ... scaled by sqrt(2*(order-1)/3)
    const double scale = 1.0 / std::sqrt(2.0 * double(order - 1) / 3.0);
    std::vector<cplx> points;
    points.reserve(order);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t q = 0; q < side; ++q)
            points.emplace_back(scale * (2.0 * double(i) - double(side - 1)),
                                scale * (2.0 * double(q) - double(side - 1)));
    return points;
}

std::vector<cplx> residual_isi_samples(const ToeplitzSpectrum& phi, std::size_t half_bandwidth,
                                       std::size_t row, std::size_t n_draws,
                                       const std::vector<cplx>& alphabet, std::uint64_t seed) {
    const std::size_t n = phi.size();
    if (row >= n)
        throw std::out_of_range("residual_isi_samples: row out of range");
    if (half_bandwidth > n / 2)
        throw std::invalid_argument("residual_isi_samples: half bandwidth must not exceed N/2");
    if (alphabet.empty())
        throw std::invalid_argument("residual_isi_samples: alphabet must be non-empty");

    std::vector<cplx> coeffs;
    coeffs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == row)
            continue;
        const std::size_t diff = row > k ? row - k : k - row;
        const bool kept = diff <= half_bandwidth || diff + half_bandwidth >= n + 1;
        if (!kept)
            coeffs.push_back(phi.entry(row, k));
    }

    Rng rng(seed);
    std::vector<cplx> out(n_draws);
    for (std::size_t d = 0; d < n_draws; ++d) {
        cplx acc{};
        for (const cplx& c : coeffs)
            acc += c * alphabet[rng.index(alphabet.size())];
        out[d] = acc;
    }
    return out;
}

} // namespace cfrsim
