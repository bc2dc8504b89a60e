// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <cstdint>
#include <vector>

#include "cfrsim/fft.hpp"
#include "cfrsim/linalg.hpp"
#include "cfrsim/pdp.hpp"
#include "cfrsim/rng.hpp"
#include "cfrsim/toeplitz.hpp"

namespace cfrsim {

struct OfdmConfig {
    std::size_t fft_size = 512;            ///< subcarrier count N
    std::size_t cp_len = 36;               ///< cyclic prefix length in samples
    double sample_interval = 1.0 / 7.68e6; ///< seconds per sample
    std::size_t symbols_per_run = 10000;

    std::size_t symbol_len() const { return fft_size + cp_len; }
    double symbol_duration() const { return double(symbol_len()) * sample_interval; }
    double sample_rate() const { return 1.0 / sample_interval; }

    void validate() const; ///< requires 0 <= cp_len < fft_size, positive T_s
};

/// Additive circularly symmetric complex Gaussian noise source. A variance
/// of zero disables sampling entirely (no generator state is consumed).
class NoiseModel {
  public:
    NoiseModel() : variance_(0.0), rng_(0) {}
    NoiseModel(double variance, std::uint64_t seed) : variance_(variance), rng_(seed) {}

    static NoiseModel off() { return NoiseModel(); }

    double variance() const { return variance_; }
    bool enabled() const { return variance_ > 0.0; }

    cplx sample() { return enabled() ? rng_.cnormal(variance_) : cplx{}; }

    void add_to(std::vector<cplx>& v) {
        if (!enabled())
            return;
        for (cplx& x : v)
            x += rng_.cnormal(variance_);
    }

  private:
    double variance_;
    Rng rng_;
};

/// Rayleigh fading generator configuration: sum-of-sinusoids with a
/// stratified angle grid, an independent random grid rotation and random
/// phases per tap. The ensemble autocorrelation follows the classical
/// J0(2*pi*p*fD*Ts) Doppler model.
struct FadingProcess {
    double doppler_hz = 0.0;
    std::uint64_t seed = 0;
    std::size_t oscillators = 64; ///< per tap; >= 32 recommended
};

/// Per-symbol channel tap coefficients under block fading: one coefficient
/// vector per OFDM symbol, constant within the symbol, sampled at the
/// symbol start instants u*(N+v)*Ts.
struct ChannelRealization {
    PowerDelayProfile pdp;
    OfdmConfig cfg;
    std::vector<std::vector<cplx>> coeffs; ///< [symbol][tap]

    std::size_t symbol_count() const { return coeffs.size(); }

    /// Dense impulse response of symbol u, length delay_spread()+1.
    std::vector<cplx> cir(std::size_t u) const;
};

ChannelRealization generate_fading(const PowerDelayProfile& pdp, const FadingProcess& fp,
                                   std::size_t n_symbols, const OfdmConfig& cfg);

/// Sample-level tapped-delay-line filter with memory across symbol
/// boundaries; this is what produces intersymbol interference. The stream
/// must consist of whole (N+v)-sample symbols (cyclic prefix included) and
/// the realization must cover them. Tap coefficients switch at symbol
/// boundaries (block fading).
std::vector<cplx> tdl_filter(const std::vector<cplx>& stream, const ChannelRealization& ch,
                             NoiseModel& noise);

/// Block-domain channel operators for one OFDM symbol. Stored in structured
/// form (impulse response + Toeplitz first row); dense matrices are a
/// small-size opt-in for verification.
struct BlockMatrices {
    std::size_t n = 0;      ///< FFT size
    std::size_t cp = 0;     ///< cyclic prefix length
    std::size_t excess = 0; ///< part of the delay spread beyond the prefix
    std::vector<cplx> cir;  ///< h[0..tau], block fading
    std::vector<cplx> rho;  ///< first row of the interference Toeplitz matrix

    TriangularToeplitz interference_toeplitz() const { return TriangularToeplitz(rho); }

    /// Nonzero positions of rho with their values; at most one per tap.
    std::vector<std::pair<std::size_t, cplx>> sparse_rho() const;

    // Dense forms, limited to n <= 256.
    CMatrix dense_h() const;
    CMatrix dense_a() const;
    CMatrix dense_b() const;
    CMatrix dense_s() const;
};

BlockMatrices build_block_matrices(const ChannelRealization& ch, std::size_t u);

/// One-symbol block transmission:
///   y = (H - A) x_cur + B x_prev + w
/// evaluated with structured operators. Debug builds cross-check the
/// equivalent separated form H x_cur + B (x_prev - shift_v(x_cur)) + w.
std::vector<cplx> block_transmit(const std::vector<cplx>& x_prev, const std::vector<cplx>& x_cur,
                                 const BlockMatrices& bm, NoiseModel& noise);

/// Circular shift by `shift` samples: out[i] = x[(i - shift) mod N].
std::vector<cplx> circular_shift(const std::vector<cplx>& x, std::size_t shift);

/// Circular convolution of x with the impulse response (block fading form).
std::vector<cplx> apply_circulant(const std::vector<cplx>& cir, const std::vector<cplx>& x);

/// Interference operator applied to a vector: rows 0..excess-1 pick up the
/// previous-symbol tail through the channel segment beyond the prefix.
std::vector<cplx> apply_isi_operator(const BlockMatrices& bm, const std::vector<cplx>& z);

// OFDM symbol plumbing (unitary transforms).
std::vector<cplx> ofdm_modulate(const Fft& fft, const std::vector<cplx>& subcarriers);
std::vector<cplx> with_cyclic_prefix(const std::vector<cplx>& time_symbol, std::size_t cp_len);
std::vector<cplx> ofdm_demodulate(const Fft& fft, const std::vector<cplx>& stream, std::size_t u,
                                  const OfdmConfig& cfg);

} // namespace cfrsim
