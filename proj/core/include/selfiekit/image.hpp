// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "selfiekit/errors.hpp"

namespace selfiekit {

/// Row-major, channel-interleaved raster. Pixel (x, y) channel c lives at
/// data[(y * width + x) * channels + c].
template <typename T>
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<T> data;

    Image() = default;
    Image(int w, int h, int c, T fill = T{})
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {
        if (w < 0 || h < 0 || c < 1) {
            throw InvalidInputError("image dimensions must be non-negative, channels >= 1");
        }
    }

    bool empty() const { return width == 0 || height == 0; }

    T& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    const T& at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool contains(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    bool operator==(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels && data == o.data;
    }
};

using ImageU8 = Image<std::uint8_t>;
using ImageF = Image<float>;
using ImageD = Image<double>;

/// Interpolation choice for resampling. Label images must use Nearest so
/// that ids are never blended.
enum class Interp { Bilinear, Nearest };

/// Samples `img` at a continuous position with pixel centers at integer
/// coordinates. Positions outside [0, w-1] x [0, h-1] return `fill`.
/// `fill` must carry `img.channels` values; results are written to `out`.
void sample(const ImageU8& img, double x, double y, Interp interp,
            const std::uint8_t* fill, std::uint8_t* out);

/// Resizes to (out_w, out_h). `area` selects box averaging, the usual choice
/// for large downscales; otherwise bilinear.
ImageU8 resize(const ImageU8& img, int out_w, int out_h, bool area = false);

/// Pastes `src` onto `dst` with its top-left corner at (ox, oy), clipping
/// against dst bounds. Channel counts must match.
void paste_clipped(ImageU8& dst, const ImageU8& src, int ox, int oy);

} // namespace selfiekit
