// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfrsim/channel.hpp"
#include "cfrsim/toeplitz.hpp"

namespace cfrsim {

/// Closed-form mean interference power between subcarriers at a given
/// distance, driven by the magnitudes of the interference-row entries:
///
///   P(offset) = (1 / (N^2 * sin^2(pi*offset/N)))
///               * sum_k |row[k]|^2 * sin^2(pi*offset*k/N)
///
/// For a fixed row this equals the exact average of the squared interference
/// response over all subcarrier pairs at that cyclic offset; feeding RMS gains
/// instead gives the fading-ensemble mean. The offset must be nonzero (the
/// diagonal has its own formula in the spectrum itself).
double expected_isi_power(const std::vector<cplx>& first_row, std::size_t offset);

/// Interference power profile over all offsets for a quantized profile and
/// OFDM configuration, normalized to the mean undistorted subcarrier power.
struct IsiPowerProfile {
    std::vector<std::size_t> offsets;  ///< 1 .. N-1
    std::vector<double> power;         ///< closed-form mean |interference|^2
    double reference_power = 0.0;      ///< mean undistorted subcarrier power
    std::vector<double> normalized_db; ///< 10*log10(power/reference), floored
};

IsiPowerProfile isi_power_profile(const PowerDelayProfile& pdp, const OfdmConfig& cfg);

/// Mean received power of an undistorted subcarrier for one symbol,
/// (1/N) * sum of squared impulse-response magnitudes.
double undistorted_power(const ChannelRealization& ch, std::size_t u);

/// Signal-to-error ratio in dB between the reduced-model response (the
/// reference in the numerator) and the complete response:
///   20*log10(||reduced|| / ||reduced - complete||)
/// Identical streams return +infinity; a zero-norm reference is an error.
double ser_db(const std::vector<cplx>& reduced, const std::vector<cplx>& complete);

struct JbResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
};

/// Jarque-Bera normality statistic (n/6) * (skew^2 + excess_kurtosis^2 / 4)
/// with the asymptotic chi-square(2) p-value exp(-statistic/2). Requires at
/// least 20 samples; a constant sample is rejected as degenerate.
JbResult jarque_bera(std::span<const double> samples);

/// Complex samples enter the scalar test as real and imaginary parts; the
/// pooled variant concatenates both parts into one sample of twice the size
/// and is the headline number in reports.
struct JbComplexResult {
    JbResult real_part;
    JbResult imag_part;
    JbResult pooled;
};

JbComplexResult jarque_bera_complex(std::span<const cplx> samples);

/// Unit-average-power square QAM alphabet (order 4, 16, 64 or 256).
std::vector<cplx> qam_alphabet(std::size_t order);

/// Residual interference seen by one subcarrier when the reduced model drops
/// the out-of-band response: draws = sum over out-of-band columns of
/// response * symbol, with symbols drawn independently and uniformly from the
/// alphabet for every sample. Deterministic in the seed.
std::vector<cplx> residual_isi_samples(const ToeplitzSpectrum& phi, std::size_t half_bandwidth,
                                       std::size_t row, std::size_t n_draws,
                                       const std::vector<cplx>& alphabet, std::uint64_t seed);

} // namespace cfrsim
