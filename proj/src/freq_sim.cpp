// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/freq_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfrsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in_band(std::size_t n, std::size_t row, std::size_t col, std::size_t b) {
    const std::size_t diff = row > col ? row - col : col - row;
    return diff <= b || diff + b >= n + 1;
}
} // namespace

cplx BandedCfr::entry(std::size_t row, std::size_t col) const {
    if (row >= n || col >= n)
        throw std::out_of_range("BandedCfr: index out of range");
    const std::size_t k = (col + n - row) % n;
    for (std::size_t i = 0; i < offsets.size(); ++i)
        if (offsets[i] == k)
            return diagonals[i][row];
    return {};
}

std::vector<cplx> BandedCfr::multiply(const std::vector<cplx>& x) const {
    if (x.size() != n)
        throw std::invalid_argument("BandedCfr: dimension mismatch");
    std::vector<cplx> y(n, cplx{});
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        const std::size_t k = offsets[i];
        const std::vector<cplx>& diag = diagonals[i];
        for (std::size_t row = 0; row < n; ++row)
            y[row] += diag[row] * x[(row + k) % n];
    }
    return y;
}

double BandedCfr::frobenius() const {
    double s = 0.0;
    for (const auto& diag : diagonals)
        for (const cplx& v : diag)
            s += std::norm(v);
    return std::sqrt(s);
}

BandedCfr reduce_band(const ToeplitzSpectrum& phi, std::size_t half_bandwidth) {
    const std::size_t n = phi.size();
    if (half_bandwidth > n / 2)
        throw std::invalid_argument("reduce_band: half bandwidth must not exceed N/2");

    BandedCfr banded;
    banded.n = n;
    banded.half_bandwidth = half_bandwidth;
    // distinct cyclic offsets k <= b and k >= n - b; at b = n/2 the two
    // sides meet and the band covers the whole matrix
    for (std::size_t k = 0; k <= half_bandwidth; ++k)
        banded.offsets.push_back(k);
    for (std::size_t k = std::max(n - half_bandwidth, half_bandwidth + 1); k < n; ++k)
        banded.offsets.push_back(k);

    const double inv_sqrt = 1.0 / std::sqrt(double(n));
    for (const std::size_t k : banded.offsets) {
        std::vector<cplx> diag(n, cplx{});
        if (k == 0) {
            diag = phi.diagonal;
        } else {
            const cplx env = envelope_entry(n, 0, k) * inv_sqrt; // constant along the diagonal
            for (std::size_t row = 0; row < n; ++row) {
                const std::size_t col = (row + k) % n;
                if (in_band(n, row, col, half_bandwidth))
                    diag[row] = env * (phi.generator[col] - phi.generator[row]);
            }
        }
        banded.diagonals.push_back(std::move(diag));
    }
    return banded;
}

std::vector<cplx> banded_multiply(const ToeplitzSpectrum& phi, std::size_t half_bandwidth,
                                  const std::vector<cplx>& x) {
    const std::size_t n = phi.size();
    if (half_bandwidth > n / 2)
        throw std::invalid_argument("banded_multiply: half bandwidth must not exceed N/2");
    if (x.size() != n)
        throw std::invalid_argument("banded_multiply: dimension mismatch");

    std::vector<cplx> y(n);
    for (std::size_t row = 0; row < n; ++row)
        y[row] = phi.diagonal[row] * x[row];

    const double inv_sqrt = 1.0 / std::sqrt(double(n));
    const std::size_t last = std::max(n - half_bandwidth, half_bandwidth + 1);
    for (std::size_t k = 1; k < n; ++k) {
        if (k > half_bandwidth && k < last)
            continue;
        const cplx env = envelope_entry(n, 0, k) * inv_sqrt;
        for (std::size_t row = 0; row < n; ++row) {
            const std::size_t col = (row + k) % n;
            if (in_band(n, row, col, half_bandwidth))
                y[row] += env * (phi.generator[col] - phi.generator[row]) * x[col];
        }
    }
    return y;
}

void MacCounter::merge(const MacCounter& other) {
    fft += other.fft;
    diagonal_product += other.diagonal_product;
    banded_product += other.banded_product;
    channel_setup += other.channel_setup;
}

std::uint64_t fft_macs(std::size_t n) {
    std::uint64_t log2n = 0;
    while ((std::size_t(1) << log2n) < n)
        ++log2n;
    return std::uint64_t(n) / 2 * log2n;
}

FreqDomainChannel build_freq_channel(const BlockMatrices& bm, const OfdmConfig& cfg,
                                     std::optional<std::size_t> band, const Fft& fft) {
    if (fft.size() != bm.n || cfg.fft_size != bm.n)
        throw std::invalid_argument("build_freq_channel: size mismatch");

    FreqDomainChannel ch;
    ch.n = bm.n;

    // per-subcarrier gains: unnormalized transform of the impulse response
    std::vector<cplx> padded(bm.n, cplx{});
    for (std::size_t m = 0; m < bm.cir.size(); ++m)
        padded[m] = bm.cir[m];
    ch.gain = fft.forward(padded);
    const double root_n = std::sqrt(double(bm.n));
    for (cplx& g : ch.gain)
        g *= root_n;

    ch.ramp.resize(bm.n);
    for (std::size_t k = 0; k < bm.n; ++k)
        ch.ramp[k] = std::polar(1.0, -kTwoPi * double(bm.cp) * double(k) / double(bm.n));

    ch.phi = toeplitz_dft(bm.interference_toeplitz(), fft);
    ch.band = band;
    if (band)
        ch.banded = reduce_band(ch.phi, *band);
    ch.sparse_rho = bm.sparse_rho();
    return ch;
}

std::vector<cplx> freq_transmit(const std::vector<cplx>& s_prev, const std::vector<cplx>& s_cur,
                                const FreqDomainChannel& ch, const Fft& fft, NoiseModel& noise,
                                MacCounter* macs) {
    const std::size_t n = ch.n;
    if (s_prev.size() != n || s_cur.size() != n || fft.size() != n)
        throw std::invalid_argument("freq_transmit: dimension mismatch");

    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = s_prev[k] - ch.ramp[k] * s_cur[k];

    std::vector<cplx> isi;
    if (ch.band) {
        isi = ch.banded.multiply(z);
        if (macs)
            macs->banded_product += std::uint64_t(n) * (2 * *ch.band + 1);
    } else {
        // exact interference response: transform, sparse triangular-Toeplitz
        // product, transform back
        std::vector<cplx> t = fft.inverse(z);
        std::vector<cplx> bt(n, cplx{});
        for (const auto& [pos, val] : ch.sparse_rho) {
            for (std::size_t i = 0; i + pos < n; ++i)
                bt[i] += val * t[i + pos];
            if (macs)
                macs->banded_product += n - pos;
        }
        isi = fft.forward(bt);
        if (macs)
            macs->fft += 2 * fft_macs(n);
    }

    std::vector<cplx> r(n);
    for (std::size_t k = 0; k < n; ++k)
        r[k] = ch.gain[k] * s_cur[k] + isi[k];
    if (macs)
        macs->diagonal_product += 2 * std::uint64_t(n);

    noise.add_to(r);
    return r;
}

MacComparison count_macs(const OfdmConfig& cfg, const PowerDelayProfile& pdp,
                         std::size_t half_bandwidth, std::size_t n_users,
                         bool recompute_cfr_each_symbol, std::size_t n_symbols) {
    if (n_users == 0 || n_symbols == 0)
        throw std::invalid_argument("count_macs: users and symbols must be positive");
    if (half_bandwidth > cfg.fft_size / 2)
        throw std::invalid_argument("count_macs: half bandwidth must not exceed N/2");

    const std::uint64_t n = cfg.fft_size;
    const std::uint64_t diag_width = 2 * std::uint64_t(half_bandwidth) + 1;
    const std::uint64_t taps = pdp.tap_count();

    MacComparison cmp;
    for (std::size_t u = 0; u < n_users; ++u) {
        const std::uint64_t alloc = n / n_users + (u < n % n_users ? 1 : 0);
        cmp.freq.diagonal_product += 2 * alloc;       // gain + prefix ramp
        cmp.freq.banded_product += alloc * diag_width;
        if (recompute_cfr_each_symbol) {
            cmp.freq.channel_setup += 2 * fft_macs(n) + n   // generator + diagonal
                                      + alloc * diag_width; // banded rows rebuild
        }
        cmp.tdl.banded_product += (n + cfg.cp_len) * taps; // time-domain convolution
        cmp.tdl.fft += fft_macs(n);                        // per-user demodulation
    }
    cmp.tdl.fft += fft_macs(n); // shared modulation transform

    cmp.freq.fft *= n_symbols;
    cmp.freq.diagonal_product *= n_symbols;
    cmp.freq.banded_product *= n_symbols;
    cmp.freq.channel_setup *= n_symbols;
    cmp.tdl.fft *= n_symbols;
    cmp.tdl.banded_product *= n_symbols;
    return cmp;
}

} // namespace cfrsim
