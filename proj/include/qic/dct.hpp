// Copyright 2026 The qic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "qic/image.hpp"

namespace qic {

/// 8x8 block of real DCT coefficients.
struct RealBlock {
    std::array<double, 64> c{};

    [[nodiscard]] double at(std::uint32_t u, std::uint32_t v) const { return c[u * 8 + v]; }
    double &at(std::uint32_t u, std::uint32_t v) { return c[u * 8 + v]; }

    bool operator==(const RealBlock &) const = default;
};

/// Scalar quantization step, 1..255.
struct QuantSpec {
    int q = 1;

    explicit QuantSpec(int step) : q(step) {
        if (step < 1 || step > 255)
            throw std::invalid_argument("quantization factor " + std::to_string(step) +
                                        " outside 1..255");
    }
};

/// Quantized coefficients for one block plus the step that produced them.
/// Magnitudes fit in 12 signed bits for any 8-bit input tile.
struct CoeffBlock {
    std::array<int, 64> c{};
    int q = 1;

    [[nodiscard]] int at(std::uint32_t u, std::uint32_t v) const { return c[u * 8 + v]; }
    int &at(std::uint32_t u, std::uint32_t v) { return c[u * 8 + v]; }

    [[nodiscard]] bool all_zero() const {
        for (int v : c)
            if (v != 0)
                return false;
        return true;
    }

    bool operator==(const CoeffBlock &) const = default;
};

namespace detail {

// Orthonormal DCT-II basis, M[u][x] = a(u) cos((2x+1)u pi / 16).
inline const std::array<std::array<double, 8>, 8> &dct_basis() {
    static const std::array<std::array<double, 8>, 8> table = [] {
        std::array<std::array<double, 8>, 8> m{};
        const double pi = std::acos(-1.0);
        for (int u = 0; u < 8; ++u) {
            const double a = (u == 0) ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x)
                m[u][x] = a * std::cos((2 * x + 1) * u * pi / 16.0);
        }
        return m;
    }();
    return table;
}

} // namespace detail

/// Forward 2-D orthonormal DCT-II with the -128 level shift applied first.
inline RealBlock dct8x8(const PixelBlock &tile) {
    const auto &m = detail::dct_basis();
    std::array<std::array<double, 8>, 8> tmp{}; // rows transformed along x
    for (int y = 0; y < 8; ++y)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int x = 0; x < 8; ++x)
                s += (double(tile[y * 8 + x]) - 128.0) * m[v][x];
            tmp[y][v] = s;
        }
    RealBlock out;
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int y = 0; y < 8; ++y)
                s += m[u][y] * tmp[y][v];
            out.at(u, v) = s;
        }
    return out;
}

/// Inverse DCT, +128 level shift, round, clamp to [0,255].
inline PixelBlock idct8x8(const RealBlock &rb) {
    const auto &m = detail::dct_basis();
    std::array<std::array<double, 8>, 8> tmp{};
    for (int y = 0; y < 8; ++y)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int u = 0; u < 8; ++u)
                s += m[u][y] * rb.at(u, v);
            tmp[y][v] = s;
        }
    PixelBlock out;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            double s = 0.0;
            for (int v = 0; v < 8; ++v)
                s += tmp[y][v] * m[v][x];
            const long r = std::lround(s + 128.0);
            out[y * 8 + x] = static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
        }
    return out;
}

/// Uniform scalar quantizer, rounding half away from zero.
inline CoeffBlock quantize(const RealBlock &rb, const QuantSpec &spec) {
    CoeffBlock out;
    out.q = spec.q;
    for (int i = 0; i < 64; ++i)
        out.c[i] = static_cast<int>(std::lround(rb.c[i] / double(spec.q)));
    return out;
}

inline RealBlock dequantize(const CoeffBlock &cb) {
    RealBlock out;
    for (int i = 0; i < 64; ++i)
        out.c[i] = double(cb.c[i]) * double(cb.q);
    return out;
}

/// Mean squared error over the original (unpadded) region.
inline double mse_orig_region(const GrayImage &a, const GrayImage &b) {
    if (a.width != b.width || a.height != b.height || a.orig_width != b.orig_width ||
        a.orig_height != b.orig_height)
        throw std::invalid_argument("psnr: image dimensions differ");
    double sum = 0.0;
    for (std::uint32_t y = 0; y < a.orig_height; ++y)
        for (std::uint32_t x = 0; x < a.orig_width; ++x) {
            const double d = double(a.at(y, x)) - double(b.at(y, x));
            sum += d * d;
        }
    return sum / (double(a.orig_width) * double(a.orig_height));
}

/// 10*log10(255^2 / MSE) in dB; +infinity when the images agree exactly.
inline double psnr(const GrayImage &a, const GrayImage &b) {
    const double mse = mse_orig_region(a, b);
    if (mse == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

} // namespace qic
