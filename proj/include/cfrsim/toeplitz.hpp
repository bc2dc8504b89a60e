// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <vector>

#include "cfrsim/fft.hpp"
#include "cfrsim/linalg.hpp"

namespace cfrsim {

/// Upper-triangular Toeplitz matrix, fully described by its first row.
/// Entry (i, j) equals first_row[j - i] for j >= i and zero below the
/// diagonal. For the insufficient-cyclic-prefix application the row is
/// zero except for the channel segment that exceeds the prefix, packed
/// into the last few positions, and first_row[0] is zero; the kernel
/// itself accepts any row so it can be exercised in full generality.
struct TriangularToeplitz {
    std::vector<cplx> first_row;

    explicit TriangularToeplitz(std::vector<cplx> row);

    std::size_t size() const { return first_row.size(); }

    cplx entry(std::size_t i, std::size_t j) const {
        return j >= i ? first_row[j - i] : cplx{};
    }

    CMatrix dense() const;
};

/// Two-sided unitary DFT of an upper-triangular Toeplitz matrix, stored
/// implicitly in O(N): a generator vector (the inverse DFT of the first
/// row) plus the diagonal. Any entry reconstructs in O(1):
///
///   entry(n, m) = (generator[m] - generator[n])
///                 / ((1 - w^(n-m)) * sqrt(N))          for n != m
///   entry(n, n) = diagonal[n]
///
/// with w = exp(-j*2*pi/N). The diagonal holds the eigenvalues of the
/// optimal circulant approximation of the underlying Toeplitz matrix.
///
/// Accuracy note: reconstruction subtracts two generator values whose
/// difference shrinks as |n - m| -> 0, so entries nearest the diagonal
/// carry the worst relative error; comparisons throughout the project use
/// a mixed absolute/relative tolerance of 1e-10 in double precision.
struct ToeplitzSpectrum {
    std::vector<cplx> generator; ///< inverse DFT of the first row
    std::vector<cplx> diagonal;

    std::size_t size() const { return generator.size(); }

    cplx entry(std::size_t n, std::size_t m) const;

    /// Dense reconstruction; explicit opt-in, O(N^2).
    CMatrix dense() const;
};

/// Off-diagonal envelope factor 1/(1 - w^(row-col)) with w = exp(-j*2*pi/N);
/// zero on the diagonal. Depends only on the dimension and the (cyclic)
/// index difference, and is Hermitian in (row, col).
cplx envelope_entry(std::size_t dim, std::size_t row, std::size_t col);

/// Fast two-sided DFT of an upper-triangular Toeplitz matrix. Costs two
/// length-N inverse FFTs: one of the first row (the generator) and one of
/// the ramp-weighted first row (the diagonal).
ToeplitzSpectrum toeplitz_dft(const TriangularToeplitz& matrix);
ToeplitzSpectrum toeplitz_dft(const TriangularToeplitz& matrix, const Fft& fft);

/// Brute-force F * B * F^H with dense matrix products. O(N^3); capped so the
/// oracle cannot leak into production paths.
CMatrix dense_toeplitz_dft_oracle(const TriangularToeplitz& matrix,
                                  std::size_t size_cap = 256);

} // namespace cfrsim
