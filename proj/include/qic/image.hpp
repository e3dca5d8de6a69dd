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

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qic/errors.hpp"

namespace qic {

/// 8-bit grayscale raster. `width`/`height` are the (possibly padded)
/// storage dimensions; `orig_width`/`orig_height` remember the pre-padding
/// extent so distortion metrics can ignore padding.
struct GrayImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t orig_width = 0;
    std::uint32_t orig_height = 0;
    std::vector<std::uint8_t> samples; // row-major

    [[nodiscard]] std::uint8_t at(std::uint32_t y, std::uint32_t x) const {
        return samples[std::size_t(y) * width + x];
    }
    std::uint8_t &at(std::uint32_t y, std::uint32_t x) {
        return samples[std::size_t(y) * width + x];
    }

    bool operator==(const GrayImage &) const = default;
};

inline bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline std::uint32_t next_pow2(std::uint32_t v) { return std::bit_ceil(std::max(v, 1u)); }

inline GrayImage make_image(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0) {
    GrayImage img;
    img.width = w;
    img.height = h;
    img.orig_width = w;
    img.orig_height = h;
    img.samples.assign(std::size_t(w) * h, fill);
    return img;
}

namespace detail {

// Header tokenizer shared by P2 and P5. '#' starts a comment running to
// end of line and may appear anywhere whitespace is allowed.
class PnmScanner {
  public:
    explicit PnmScanner(std::string_view bytes) : bytes_(bytes) {}

    std::string next_token(const char *what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size())
            throw ParseError(std::string("truncated PGM header: missing ") + what);
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            ++pos_;
        return std::string(bytes_.substr(start, pos_ - start));
    }

    std::uint32_t next_uint(const char *what, std::uint32_t max_value) {
        const std::string tok = next_token(what);
        std::uint64_t value = 0;
        if (tok.empty())
            throw ParseError(std::string("empty token for ") + what);
        for (char ch : tok) {
            if (ch < '0' || ch > '9')
                throw ParseError(std::string("non-numeric ") + what + " '" + tok + "'");
            value = value * 10 + std::uint64_t(ch - '0');
            if (value > 0xFFFFFFFFull)
                break;
        }
        if (value > max_value)
            throw ParseError(std::string(what) + " " + tok + " out of range");
        return static_cast<std::uint32_t>(value);
    }

    // P5 payload starts after exactly one whitespace byte.
    std::size_t payload_offset() {
        if (pos_ >= bytes_.size())
            throw ParseError("truncated PGM: missing pixel payload");
        ++pos_;
        return pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    [[nodiscard]] std::size_t pos() const { return pos_; }

  private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a netpbm PGM (ASCII "P2" or binary "P5", maxval <= 255).
/// No padding is applied; orig dimensions equal the stored dimensions.
inline GrayImage load_pgm(std::string_view bytes) {
    detail::PnmScanner scan(bytes);
    const std::string magic = scan.next_token("magic");
    if (magic != "P2" && magic != "P5")
        throw ParseError("unsupported magic '" + magic + "' (want P2 or P5)");

    const std::uint32_t width = scan.next_uint("width", 1u << 20);
    const std::uint32_t height = scan.next_uint("height", 1u << 20);
    if (width == 0 || height == 0)
        throw ParseError("invalid zero dimension");
    // maxval is parsed before the range check so depth errors are distinct.
    const std::string maxval_tok = scan.next_token("maxval");
    std::uint64_t maxval = 0;
    for (char ch : maxval_tok) {
        if (ch < '0' || ch > '9')
            throw ParseError("non-numeric maxval '" + maxval_tok + "'");
        maxval = maxval * 10 + std::uint64_t(ch - '0');
        if (maxval > 1u << 20)
            break;
    }
    if (maxval == 0)
        throw ParseError("invalid maxval 0");
    if (maxval > 255)
        throw ParseError("unsupported maxval " + maxval_tok + " (only 8-bit depth supported)");

    GrayImage img = make_image(width, height);
    const std::size_t count = img.samples.size();

    if (magic == "P5") {
        const std::size_t off = scan.payload_offset();
        if (bytes.size() - off < count)
            throw ParseError("truncated P5 payload: expected " + std::to_string(count) +
                             " bytes, found " + std::to_string(bytes.size() - off));
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(bytes[off + i]);
            if (v > maxval)
                throw ParseError("P5 sample " + std::to_string(v) + " exceeds maxval");
            img.samples[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            std::uint32_t v;
            try {
                v = scan.next_uint("sample", 255);
            } catch (const ParseError &) {
                throw ParseError("truncated or malformed P2 payload at sample " +
                                 std::to_string(i));
            }
            if (v > maxval)
                throw ParseError("P2 sample " + std::to_string(v) + " exceeds maxval");
            img.samples[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

enum class PgmFormat { P2, P5 };

/// Serialize as PGM. The P5 header uses single-space separators with a
/// newline after maxval; P2 wraps the raster at 16 samples per line.
inline std::string write_pgm(const GrayImage &img, PgmFormat fmt = PgmFormat::P5) {
    std::string out;
    if (fmt == PgmFormat::P5) {
        out = "P5 " + std::to_string(img.width) + " " + std::to_string(img.height) + " 255\n";
        out.append(reinterpret_cast<const char *>(img.samples.data()), img.samples.size());
    } else {
        out = "P2\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
        for (std::size_t i = 0; i < img.samples.size(); ++i) {
            out += std::to_string(img.samples[i]);
            out += (i % 16 == 15 || i + 1 == img.samples.size()) ? '\n' : ' ';
        }
    }
    return out;
}

inline GrayImage load_pgm_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_pgm(buf.str());
}

inline void write_pgm_file(const GrayImage &img, const std::string &path,
                           PgmFormat fmt = PgmFormat::P5) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    const std::string data = write_pgm(img, fmt);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw IoError("short write to '" + path + "'");
}

/// Grow each axis independently to the next power of two (at least
/// `min_extent`), filling new samples with `fill`. Original dimensions are
/// preserved, so the call is idempotent.
inline GrayImage pad_to_pow2(const GrayImage &img, std::uint8_t fill = 0,
                             std::uint32_t min_extent = 1) {
    const std::uint32_t new_w = std::max(next_pow2(img.width), next_pow2(min_extent));
    const std::uint32_t new_h = std::max(next_pow2(img.height), next_pow2(min_extent));
    if (new_w == img.width && new_h == img.height)
        return img;
    GrayImage out;
    out.width = new_w;
    out.height = new_h;
    out.orig_width = img.orig_width;
    out.orig_height = img.orig_height;
    out.samples.assign(std::size_t(new_w) * new_h, fill);
    for (std::uint32_t y = 0; y < img.height; ++y)
        std::copy_n(img.samples.begin() + std::size_t(y) * img.width, img.width,
                    out.samples.begin() + std::size_t(y) * new_w);
    return out;
}

using PixelBlock = std::array<std::uint8_t, 64>;

/// Partition of a raster into 8x8 tiles, raster block order.
struct BlockGrid {
    std::vector<PixelBlock> blocks;
    std::uint32_t rows_of_blocks = 0;
    std::uint32_t cols_of_blocks = 0;

    [[nodiscard]] std::size_t block_count() const { return blocks.size(); } // S
};

inline BlockGrid split_blocks(const GrayImage &img) {
    if (img.width % 8 != 0 || img.height % 8 != 0)
        throw std::invalid_argument("split_blocks: dimensions " + std::to_string(img.width) +
                                    "x" + std::to_string(img.height) +
                                    " not divisible by 8");
    BlockGrid grid;
    grid.rows_of_blocks = img.height / 8;
    grid.cols_of_blocks = img.width / 8;
    grid.blocks.reserve(std::size_t(grid.rows_of_blocks) * grid.cols_of_blocks);
    for (std::uint32_t by = 0; by < grid.rows_of_blocks; ++by) {
        for (std::uint32_t bx = 0; bx < grid.cols_of_blocks; ++bx) {
            PixelBlock tile;
            for (std::uint32_t y = 0; y < 8; ++y)
                for (std::uint32_t x = 0; x < 8; ++x)
                    tile[y * 8 + x] = img.at(by * 8 + y, bx * 8 + x);
            grid.blocks.push_back(tile);
        }
    }
    return grid;
}

inline GrayImage join_blocks(const BlockGrid &grid, std::uint32_t orig_width,
                             std::uint32_t orig_height) {
    GrayImage img = make_image(grid.cols_of_blocks * 8, grid.rows_of_blocks * 8);
    img.orig_width = orig_width;
    img.orig_height = orig_height;
    for (std::uint32_t by = 0; by < grid.rows_of_blocks; ++by)
        for (std::uint32_t bx = 0; bx < grid.cols_of_blocks; ++bx) {
            const PixelBlock &tile = grid.blocks[std::size_t(by) * grid.cols_of_blocks + bx];
            for (std::uint32_t y = 0; y < 8; ++y)
                for (std::uint32_t x = 0; x < 8; ++x)
                    img.at(by * 8 + y, bx * 8 + x) = tile[y * 8 + x];
        }
    return img;
}

/// Drop padding, restoring the original extent.
inline GrayImage crop_to_orig(const GrayImage &img) {
    if (img.orig_width == img.width && img.orig_height == img.height)
        return img;
    GrayImage out = make_image(img.orig_width, img.orig_height);
    for (std::uint32_t y = 0; y < out.height; ++y)
        for (std::uint32_t x = 0; x < out.width; ++x)
            out.at(y, x) = img.at(y, x);
    return out;
}

} // namespace qic
