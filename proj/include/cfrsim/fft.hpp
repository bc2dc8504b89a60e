// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <memory>
#include <vector>

#include "cfrsim/linalg.hpp"

namespace cfrsim {

/// Unitary DFT engine with symmetric 1/sqrt(N) normalization on both
/// directions, matching the Fourier convention used across the project:
///   forward:  X[k] = (1/sqrt(N)) * sum_m x[m] * exp(-j*2*pi*k*m/N)
///   inverse:  x[m] = (1/sqrt(N)) * sum_k X[k] * exp(+j*2*pi*k*m/N)
///
/// Power-of-two sizes use an iterative radix-2 kernel; any other size falls
/// back to Bluestein's chirp-z method on a padded power-of-two convolution.
/// The engine is immutable after construction and safe to share across
/// threads; scratch buffers are per call.
class Fft {
  public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    std::vector<cplx> forward(const std::vector<cplx>& in) const;
    std::vector<cplx> inverse(const std::vector<cplx>& in) const;

  private:
    void radix2(std::vector<cplx>& a, bool fwd) const;
    std::vector<cplx> bluestein_forward(const std::vector<cplx>& in) const;

    std::size_t n_ = 0;
    std::vector<cplx> twiddle_;
    std::vector<std::size_t> bitrev_;

    // Bluestein state (empty for power-of-two sizes)
    std::size_t conv_n_ = 0;
    std::vector<cplx> chirp_;
    std::vector<cplx> chirp_fft_;
    std::unique_ptr<Fft> conv_engine_;
};

/// Dense unitary Fourier matrix; verification use only.
CMatrix fourier_matrix(std::size_t n);

} // namespace cfrsim
