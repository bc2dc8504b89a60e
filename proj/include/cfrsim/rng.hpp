// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace cfrsim {

/// Deterministic, portable random generator (xoshiro256++ seeded via splitmix64).
///
/// The standard-library distributions are implementation-defined, so every
/// random quantity in this project goes through this class to keep frozen
/// test vectors and report bytes stable across compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_)
            word = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform angle in [0, 2*pi).
    double angle() { return uniform() * 6.283185307179586476925286766559; }

    /// Standard normal via Box-Muller; generates pairs, caches the spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = double((next() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> cnormal(double variance) {
        const double u1 = double((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1) * variance);
        const double t = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Uniform index in [0, bound); bound must be positive.
    std::size_t index(std::size_t bound) {
        // power-of-two bounds (QAM alphabets) take the top bits directly
        if ((bound & (bound - 1)) == 0) {
            unsigned shift = 0;
            while ((std::size_t(1) << shift) < bound)
                ++shift;
            return std::size_t(next() >> (64 - shift)) & (bound - 1);
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return std::size_t(x % bound);
    }

    /// Derived stream seed: master seed + stream index, documented seed sequence
    /// for parallel Monte-Carlo work.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t x = master + 0x9E3779B97F4A7C15ull * (stream + 1);
        std::uint64_t a = splitmix64(x);
        return splitmix64(x) ^ a;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace cfrsim
