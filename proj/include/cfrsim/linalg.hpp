// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cfrsim {

using cplx = std::complex<double>;

/// Minimal dense complex matrix, used by the dense oracles and small-size
/// verification paths only. The simulation hot paths never materialize one.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    CMatrix adjoint() const {
        CMatrix m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows, cols); ++i)
            t += (*this)(i, i);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (const cplx& v : data)
            s += std::norm(v);
        return std::sqrt(s);
    }
};

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("CMatrix: dimension mismatch in product");
    CMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{})
                continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("CMatrix: dimension mismatch");
    CMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        c.data[i] = a.data[i] - b.data[i];
    return c;
}

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("CMatrix: dimension mismatch");
    CMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        c.data[i] = a.data[i] + b.data[i];
    return c;
}

inline CMatrix operator*(cplx s, const CMatrix& a) {
    CMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        c.data[i] = s * a.data[i];
    return c;
}

inline std::vector<cplx> mat_vec(const CMatrix& a, const std::vector<cplx>& x) {
    if (a.cols != x.size())
        throw std::invalid_argument("CMatrix: dimension mismatch in mat_vec");
    std::vector<cplx> y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j)
            s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double norm2(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const cplx& v : a)
        s += std::norm(v);
    return s;
}

} // namespace cfrsim
