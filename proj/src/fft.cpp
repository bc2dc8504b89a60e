// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfrsim {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }
} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n_ == 0)
        throw std::invalid_argument("Fft: transform size must be positive");
    if (is_pow2(n_)) {
        twiddle_.resize(n_ / 2);
        for (std::size_t k = 0; k < n_ / 2; ++k)
            twiddle_[k] = std::polar(1.0, -2.0 * kPi * double(k) / double(n_));
        bitrev_.assign(n_, 0);
        for (std::size_t i = 1; i < n_; ++i)
            bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) ? n_ >> 1 : 0);
        return;
    }
    conv_n_ = 1;
    while (conv_n_ < 2 * n_ - 1)
        conv_n_ <<= 1;
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        // k^2 reduced mod 2n keeps the phase argument small at large sizes
        const std::uint64_t q = (std::uint64_t(k) * k) % (2 * n_);
        chirp_[k] = std::polar(1.0, -kPi * double(q) / double(n_));
    }
    conv_engine_ = std::make_unique<Fft>(conv_n_);
    std::vector<cplx> kern(conv_n_, cplx{});
    kern[0] = 1.0;
    for (std::size_t j = 1; j < n_; ++j) {
        kern[j] = std::conj(chirp_[j]);
        kern[conv_n_ - j] = std::conj(chirp_[j]);
    }
    conv_engine_->radix2(kern, true);
    chirp_fft_ = std::move(kern);
}

void Fft::radix2(std::vector<cplx>& a, bool fwd) const {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddle_[k * step];
                if (!fwd)
                    w = std::conj(w);
                const cplx t = w * a[base + k + half];
                const cplx u = a[base + k];
                a[base + k] = u + t;
                a[base + k + half] = u - t;
            }
        }
    }
}

std::vector<cplx> Fft::bluestein_forward(const std::vector<cplx>& in) const {
    std::vector<cplx> a(conv_n_, cplx{});
    for (std::size_t m = 0; m < n_; ++m)
        a[m] = in[m] * chirp_[m];
    conv_engine_->radix2(a, true);
    for (std::size_t i = 0; i < conv_n_; ++i)
        a[i] *= chirp_fft_[i];
    conv_engine_->radix2(a, false);
    const double scale = 1.0 / (double(conv_n_) * std::sqrt(double(n_)));
    std::vector<cplx> out(n_);
    for (std::size_t k = 0; k < n_; ++k)
        out[k] = chirp_[k] * a[k] * scale;
    return out;
}

std::vector<cplx> Fft::forward(const std::vector<cplx>& in) const {
    if (in.size() != n_)
        throw std::invalid_argument("Fft: input length does not match engine size");
    if (conv_n_ != 0)
        return bluestein_forward(in);
    std::vector<cplx> out(in);
    radix2(out, true);
    const double scale = 1.0 / std::sqrt(double(n_));
    for (cplx& v : out)
        v *= scale;
    return out;
}

std::vector<cplx> Fft::inverse(const std::vector<cplx>& in) const {
    if (in.size() != n_)
        throw std::invalid_argument("Fft: input length does not match engine size");
    if (conv_n_ != 0) {
        std::vector<cplx> tmp(n_);
        for (std::size_t i = 0; i < n_; ++i)
            tmp[i] = std::conj(in[i]);
        std::vector<cplx> out = bluestein_forward(tmp);
        for (cplx& v : out)
            v = std::conj(v);
        return out;
    }
    std::vector<cplx> out(in);
    radix2(out, false);
    const double scale = 1.0 / std::sqrt(double(n_));
    for (cplx& v : out)
        v *= scale;
    return out;
}

CMatrix fourier_matrix(std::size_t n) {
    CMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(double(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t q = (r * c) % n;
            f(r, c) = std::polar(scale, -2.0 * kPi * double(q) / double(n));
        }
    return f;
}

} // namespace cfrsim
