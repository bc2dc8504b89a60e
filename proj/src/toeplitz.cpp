// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/toeplitz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfrsim {

namespace {
constexpr double kPi = std::numbers::pi;

void require_finite(const std::vector<cplx>& row) {
    for (const cplx& v : row)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("TriangularToeplitz: non-finite entry in first row");
}
} // namespace

TriangularToeplitz::TriangularToeplitz(std::vector<cplx> row) : first_row(std::move(row)) {
    if (first_row.empty())
        throw std::invalid_argument("TriangularToeplitz: first row must be non-empty");
    require_finite(first_row);
}

CMatrix TriangularToeplitz::dense() const {
    const std::size_t n = size();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m(i, j) = first_row[j - i];
    return m;
}

cplx envelope_entry(std::size_t dim, std::size_t row, std::size_t col) {
    if (row >= dim || col >= dim)
        throw std::out_of_range("envelope_entry: index out of range");
    if (row == col)
        return {};
    // signed difference; w^(row-col) only depends on it modulo dim
    const double diff = double(std::int64_t(row) - std::int64_t(col));
    const cplx w_pow = std::polar(1.0, -2.0 * kPi * diff / double(dim));
    return 1.0 / (1.0 - w_pow);
}

cplx ToeplitzSpectrum::entry(std::size_t n, std::size_t m) const {
    const std::size_t dim = size();
    if (n >= dim || m >= dim)
        throw std::out_of_range("ToeplitzSpectrum: index out of range");
    if (n == m)
        return diagonal[n];
    return envelope_entry(dim, n, m) * (generator[m] - generator[n]) / std::sqrt(double(dim));
}

CMatrix ToeplitzSpectrum::dense() const {
    const std::size_t dim = size();
    CMatrix m(dim, dim);
    const double inv_sqrt = 1.0 / std::sqrt(double(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (r == c) {
                m(r, c) = diagonal[r];
            } else {
                m(r, c) = envelope_entry(dim, r, c) * (generator[c] - generator[r]) * inv_sqrt;
            }
        }
    }
    return m;
}

ToeplitzSpectrum toeplitz_dft(const TriangularToeplitz& matrix) {
    const Fft fft(matrix.size());
    return toeplitz_dft(matrix, fft);
}

ToeplitzSpectrum toeplitz_dft(const TriangularToeplitz& matrix, const Fft& fft) {
    const std::size_t n = matrix.size();
    if (n < 2)
        throw std::invalid_argument("toeplitz_dft: dimension must be at least 2");
    if (fft.size() != n)
        throw std::invalid_argument("toeplitz_dft: FFT engine size mismatch");
    require_finite(matrix.first_row);

    ToeplitzSpectrum s;
    s.generator = fft.inverse(matrix.first_row);

    // diagonal: inverse DFT of the row weighted by the descending ramp
    // [N, N-1, ..., 1], scaled by 1/sqrt(N)
    std::vector<cplx> weighted(n);
    for (std::size_t k = 0; k < n; ++k)
        weighted[k] = double(n - k) * matrix.first_row[k];
    s.diagonal = fft.inverse(weighted);
    const double inv_sqrt = 1.0 / std::sqrt(double(n));
    for (cplx& v : s.diagonal)
        v *= inv_sqrt;
    return s;
}

CMatrix dense_toeplitz_dft_oracle(const TriangularToeplitz& matrix, std::size_t size_cap) {
    const std::size_t n = matrix.size();
    if (n > size_cap)
        throw std::domain_error("dense_toeplitz_dft_oracle: size exceeds the oracle cap");
    const CMatrix f = fourier_matrix(n);
    return f * matrix.dense() * f.adjoint();
}

} // namespace cfrsim
