// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cfrsim/channel.hpp"
#include "cfrsim/fft.hpp"
#include "cfrsim/pdp.hpp"
#include "cfrsim/toeplitz.hpp"

namespace cfrsim {

/// Banded reduction of the interference frequency response. An entry (n, m)
/// is kept when |n - m| <= b or |n - m| >= N - b + 1 (the second clause adds
/// the wrap corners that make the band cyclic); everything else is exactly
/// zero. Stored as at most 2b+1 cyclic diagonals, so the matrix-vector
/// product runs in O(N * (2b+1)) without index branching.
struct BandedCfr {
    std::size_t n = 0;
    std::size_t half_bandwidth = 0;          ///< b
    std::vector<std::size_t> offsets;        ///< distinct cyclic column offsets
    std::vector<std::vector<cplx>> diagonals; ///< per offset, indexed by row

    cplx entry(std::size_t row, std::size_t col) const;
    std::vector<cplx> multiply(const std::vector<cplx>& x) const;
    double frobenius() const;
};

BandedCfr reduce_band(const ToeplitzSpectrum& phi, std::size_t half_bandwidth);

/// Banded product evaluated directly from the implicit spectrum without
/// materializing the diagonals; identical to
/// reduce_band(phi, b).multiply(x).
std::vector<cplx> banded_multiply(const ToeplitzSpectrum& phi, std::size_t half_bandwidth,
                                  const std::vector<cplx>& x);

/// Counter of complex multiply-accumulate operations. One MAC is one complex
/// multiply plus one complex add; an N-point FFT is booked as (N/2)*log2(N)
/// MACs. Monotone non-decreasing while a run accumulates into it.
struct MacCounter {
    std::uint64_t fft = 0;               ///< transform work
    std::uint64_t diagonal_product = 0;  ///< per-subcarrier gain and phase-ramp products
    std::uint64_t banded_product = 0;    ///< banded interference products
    std::uint64_t channel_setup = 0;     ///< interference-response (re)computation

    std::uint64_t total() const { return fft + diagonal_product + banded_product + channel_setup; }
    void merge(const MacCounter& other);
};

std::uint64_t fft_macs(std::size_t n);

/// Frequency-domain channel for one OFDM symbol: per-subcarrier gains (the
/// eigenvalues of the circular part), the implicit interference response,
/// and the cyclic-prefix phase ramp ramp[k] = exp(-j*2*pi*cp*k/N). A band
/// selects the reduced interference model; nullopt keeps the complete
/// response (applied exactly via two FFTs around the sparse time-domain
/// operator).
struct FreqDomainChannel {
    std::size_t n = 0;
    std::vector<cplx> gain;  ///< diagonal of the circular-channel response
    std::vector<cplx> ramp;  ///< prefix phase ramp, unit modulus
    ToeplitzSpectrum phi;    ///< interference frequency response
    std::optional<std::size_t> band;
    BandedCfr banded;        ///< populated when band is set
    std::vector<std::pair<std::size_t, cplx>> sparse_rho; ///< for the exact product
};

FreqDomainChannel build_freq_channel(const BlockMatrices& bm, const OfdmConfig& cfg,
                                     std::optional<std::size_t> band, const Fft& fft);

/// One-symbol frequency-domain transmission:
///   r = gain .* s_cur + phi_b * (s_prev - ramp .* s_cur) + noise
/// Noise is drawn directly in the frequency domain (the transform is
/// unitary, so the statistics match time-domain noise).
std::vector<cplx> freq_transmit(const std::vector<cplx>& s_prev, const std::vector<cplx>& s_cur,
                                const FreqDomainChannel& ch, const Fft& fft, NoiseModel& noise,
                                MacCounter* macs = nullptr);

/// Modelled MAC cost per OFDM symbol for a shared-bandwidth multi-user
/// simulation, frequency-domain model vs. the sample-level tapped-delay-line
/// reference. Accounting conventions (documented constants):
///   - the N subcarriers are split evenly across users; each user's
///     per-subcarrier products cost alloc*(2b+3) MACs (gain, ramp, banded
///     interference rows);
///   - with per-symbol recomputation each user additionally pays two
///     N-point FFTs + N weighting MACs for the interference response and
///     alloc*(2b+1) MACs to rebuild its banded rows; without it that setup
///     amortizes to zero over the channel coherence window;
///   - the TDL reference pays one shared N-point modulation FFT per symbol,
///     plus (N+cp)*L convolution MACs and one demodulation FFT per user.
struct MacComparison {
    MacCounter freq;
    MacCounter tdl;
};

MacComparison count_macs(const OfdmConfig& cfg, const PowerDelayProfile& pdp,
                         std::size_t half_bandwidth, std::size_t n_users,
                         bool recompute_cfr_each_symbol, std::size_t n_symbols = 1);

} // namespace cfrsim
