// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/channel.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfrsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dense_size(std::size_t n) {
    if (n > 256)
        throw std::domain_error("dense block matrices are limited to n <= 256");
}
} // namespace

void OfdmConfig::validate() const {
    if (fft_size < 2)
        throw std::invalid_argument("OfdmConfig: FFT size must be at least 2");
    if (cp_len >= fft_size)
        throw std::invalid_argument("OfdmConfig: cyclic prefix must be shorter than the FFT size");
    if (!(sample_interval > 0.0))
        throw std::invalid_argument("OfdmConfig: sample interval must be positive");
}

std::vector<cplx> ChannelRealization::cir(std::size_t u) const {
    if (u >= coeffs.size())
        throw std::out_of_range("ChannelRealization: symbol index out of range");
    std::vector<cplx> h(pdp.delay_spread() + 1, cplx{});
    for (std::size_t l = 0; l < pdp.taps.size(); ++l)
        h[pdp.taps[l].delay] += coeffs[u][l];
    return h;
}

ChannelRealization generate_fading(const PowerDelayProfile& pdp, const FadingProcess& fp,
                                   std::size_t n_symbols, const OfdmConfig& cfg) {
    cfg.validate();
    pdp.validate();
    if (n_symbols == 0)
        throw std::invalid_argument("generate_fading: need at least one symbol");
    if (fp.doppler_hz < 0.0)
        throw std::invalid_argument("generate_fading: Doppler frequency must be non-negative");
    if (pdp.delay_spread() >= cfg.fft_size)
        throw std::invalid_argument(
            "generate_fading: channel delay spread must be shorter than the FFT window");

    const std::size_t osc = std::max<std::size_t>(fp.oscillators, 8);
    const double t_sym = cfg.symbol_duration();
    const std::size_t taps = pdp.taps.size();

    ChannelRealization ch;
    ch.pdp = pdp;
    ch.cfg = cfg;
    ch.coeffs.assign(n_symbols, std::vector<cplx>(taps));

    std::vector<cplx> states(osc);
    std::vector<cplx> steps(osc);
    for (std::size_t l = 0; l < taps; ++l) {
        Rng rng(Rng::derive(fp.seed, l));
        const double rotation = rng.angle();
        const double amp = std::sqrt(pdp.taps[l].gain / double(osc));
        for (std::size_t i = 0; i < osc; ++i) {
            // stratified angle grid with a random per-tap rotation samples the
            // classical Doppler spectrum without line artifacts
            const double alpha = kTwoPi * (double(i) + 0.5) / double(osc) + rotation;
            states[i] = std::polar(amp, rng.angle());
            steps[i] = std::polar(1.0, -kTwoPi * fp.doppler_hz * std::cos(alpha) * t_sym);
        }
        for (std::size_t u = 0; u < n_symbols; ++u) {
            cplx c{};
            for (std::size_t i = 0; i < osc; ++i) {
                c += states[i];
                states[i] *= steps[i];
            }
            ch.coeffs[u][l] = c;
        }
    }
    return ch;
}

std::vector<cplx> tdl_filter(const std::vector<cplx>& stream, const ChannelRealization& ch,
                             NoiseModel& noise) {
    const std::size_t sym_len = ch.cfg.symbol_len();
    if (stream.size() % sym_len != 0)
        throw std::invalid_argument("tdl_filter: stream length must be a multiple of N + cp");
    const std::size_t n_sym = stream.size() / sym_len;
    if (n_sym > ch.symbol_count())
        throw std::invalid_argument("tdl_filter: realization does not cover the stream");

    const auto& taps = ch.pdp.taps;
    std::vector<cplx> out(stream.size());
    for (std::size_t n = 0; n < stream.size(); ++n) {
        const std::size_t u = n / sym_len;
        cplx y{};
        for (std::size_t l = 0; l < taps.size(); ++l) {
            const std::size_t d = taps[l].delay;
            if (d <= n)
                y += ch.coeffs[u][l] * stream[n - d];
        }
        out[n] = y + noise.sample();
    }
    return out;
}

std::vector<std::pair<std::size_t, cplx>> BlockMatrices::sparse_rho() const {
    std::vector<std::pair<std::size_t, cplx>> entries;
    for (std::size_t k = n - excess; k < n && excess > 0; ++k)
        if (rho[k] != cplx{})
            entries.emplace_back(k, rho[k]);
    return entries;
}

BlockMatrices build_block_matrices(const ChannelRealization& ch, std::size_t u) {
    const std::size_t n = ch.cfg.fft_size;
    const std::size_t cp = ch.cfg.cp_len;
    const std::size_t tau = ch.pdp.delay_spread();

    BlockMatrices bm;
    bm.n = n;
    bm.cp = cp;
    bm.excess = tau > cp ? tau - cp : 0;
    bm.cir = ch.cir(u);
    bm.rho.assign(n, cplx{});
    // the impulse-response segment beyond the prefix lands in the last
    // `excess` positions of the first row, reversed: rho[N - (d - cp)] = h[d]
    for (std::size_t d = cp + 1; d <= tau; ++d)
        bm.rho[n - (d - cp)] = bm.cir[d];
    return bm;
}

std::vector<cplx> circular_shift(const std::vector<cplx>& x, std::size_t shift) {
    const std::size_t n = x.size();
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = x[(i + n - shift % n) % n];
    return y;
}

std::vector<cplx> apply_circulant(const std::vector<cplx>& cir, const std::vector<cplx>& x) {
    const std::size_t n = x.size();
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s{};
        for (std::size_t m = 0; m < cir.size(); ++m)
            s += cir[m] * x[(i + n - m % n) % n];
        y[i] = s;
    }
    return y;
}

std::vector<cplx> apply_isi_operator(const BlockMatrices& bm, const std::vector<cplx>& z) {
    if (z.size() != bm.n)
        throw std::invalid_argument("apply_isi_operator: dimension mismatch");
    std::vector<cplx> y(bm.n, cplx{});
    const std::size_t tau = bm.cir.size() - 1;
    for (std::size_t i = 0; i < bm.excess; ++i) {
        cplx s{};
        for (std::size_t m = bm.cp + 1 + i; m <= tau; ++m)
            s += bm.cir[m] * z[bm.n + bm.cp - m + i];
        y[i] = s;
    }
    return y;
}

namespace {
// rows 0..excess-1 of the wrap-removal operator: the circular-convolution
// contributions of taps longer than cp+i that must be cancelled
std::vector<cplx> apply_wrap_removal(const BlockMatrices& bm, const std::vector<cplx>& x) {
    std::vector<cplx> y(bm.n, cplx{});
    const std::size_t tau = bm.cir.size() - 1;
    for (std::size_t i = 0; i < bm.excess; ++i) {
        cplx s{};
        for (std::size_t m = bm.cp + 1 + i; m <= tau; ++m)
            s += bm.cir[m] * x[bm.n - m + i];
        y[i] = s;
    }
    return y;
}
} // namespace

std::vector<cplx> block_transmit(const std::vector<cplx>& x_prev, const std::vector<cplx>& x_cur,
                                 const BlockMatrices& bm, NoiseModel& noise) {
    if (x_prev.size() != bm.n || x_cur.size() != bm.n)
        throw std::invalid_argument("block_transmit: symbol vectors must have length N");

    const std::vector<cplx> circ = apply_circulant(bm.cir, x_cur);
    const std::vector<cplx> wrap = apply_wrap_removal(bm, x_cur);
    const std::vector<cplx> isi = apply_isi_operator(bm, x_prev);

    std::vector<cplx> y(bm.n);
    for (std::size_t i = 0; i < bm.n; ++i)
        y[i] = circ[i] - wrap[i] + isi[i];

#ifndef NDEBUG
    {
        // separated form must agree: H x + B (x_prev - shift_cp(x_cur))
        std::vector<cplx> z(bm.n);
        const std::vector<cplx> shifted = circular_shift(x_cur, bm.cp);
        for (std::size_t i = 0; i < bm.n; ++i)
            z[i] = x_prev[i] - shifted[i];
        const std::vector<cplx> isi_sep = apply_isi_operator(bm, z);
        for (std::size_t i = 0; i < bm.n; ++i)
            assert(std::abs(circ[i] + isi_sep[i] - y[i]) < 1e-9);
    }
#endif

    for (cplx& v : y)
        v += noise.sample();
    return y;
}

CMatrix BlockMatrices::dense_h() const {
    require_dense_size(n);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < cir.size(); ++m)
            h(i, (i + n - m % n) % n) = cir[m];
    return h;
}

CMatrix BlockMatrices::dense_b() const {
    require_dense_size(n);
    return interference_toeplitz().dense();
}

CMatrix BlockMatrices::dense_a() const {
    require_dense_size(n);
    CMatrix a(n, n);
    const std::size_t tau = cir.size() - 1;
    for (std::size_t i = 0; i < excess; ++i)
        for (std::size_t m = cp + 1 + i; m <= tau; ++m)
            a(i, n - m + i) = cir[m];
    return a;
}

CMatrix BlockMatrices::dense_s() const {
    require_dense_size(n);
    CMatrix s(excess, excess);
    const std::size_t tau = cir.size() - 1;
    for (std::size_t i = 0; i < excess; ++i)
        for (std::size_t j = i; j < excess; ++j)
            s(i, j) = cir[tau - (j - i)];
    return s;
}

std::vector<cplx> ofdm_modulate(const Fft& fft, const std::vector<cplx>& subcarriers) {
    return fft.inverse(subcarriers);
}

std::vector<cplx> with_cyclic_prefix(const std::vector<cplx>& time_symbol, std::size_t cp_len) {
    const std::size_t n = time_symbol.size();
    if (cp_len >= n)
        throw std::invalid_argument("with_cyclic_prefix: prefix must be shorter than the symbol");
    std::vector<cplx> out;
    out.reserve(n + cp_len);
    out.insert(out.end(), time_symbol.end() - std::ptrdiff_t(cp_len), time_symbol.end());
    out.insert(out.end(), time_symbol.begin(), time_symbol.end());
    return out;
}

std::vector<cplx> ofdm_demodulate(const Fft& fft, const std::vector<cplx>& stream, std::size_t u,
                                  const OfdmConfig& cfg) {
    const std::size_t start = u * cfg.symbol_len() + cfg.cp_len;
    if (start + cfg.fft_size > stream.size())
        throw std::out_of_range("ofdm_demodulate: symbol index out of range");
    std::vector<cplx> body(stream.begin() + std::ptrdiff_t(start),
                           stream.begin() + std::ptrdiff_t(start + cfg.fft_size));
    return fft.forward(body);
}

} // namespace cfrsim
