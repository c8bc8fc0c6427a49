// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/image.hpp"

#include <algorithm>
#include <cmath>

namespace selfiekit {

// Inverse-mapped coordinates carry rounding noise from the projective
// division; points within this margin of the source rectangle are treated
// as lying on it rather than spilling into fill.
constexpr double kBoundarySnapEps = 1e-8;

void sample(const ImageU8& img, double x, double y, Interp interp,
            const std::uint8_t* fill, std::uint8_t* out) {
    const int w = img.width;
    const int h = img.height;
    if (x < 0.0 && x >= -kBoundarySnapEps) x = 0.0;
    if (y < 0.0 && y >= -kBoundarySnapEps) y = 0.0;
    if (x > w - 1.0 && x <= w - 1.0 + kBoundarySnapEps) x = w - 1.0;
    if (y > h - 1.0 && y <= h - 1.0 + kBoundarySnapEps) y = h - 1.0;
    if (x < 0.0 || y < 0.0 || x > w - 1.0 || y > h - 1.0) {
        for (int c = 0; c < img.channels; ++c) out[c] = fill[c];
        return;
    }
    if (interp == Interp::Nearest) {
        const int xi = std::min(static_cast<int>(std::lround(x)), w - 1);
        const int yi = std::min(static_cast<int>(std::lround(y)), h - 1);
        for (int c = 0; c < img.channels; ++c) out[c] = img.at(xi, yi, c);
        return;
    }
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    x0 = std::clamp(x0, 0, w - 2 >= 0 ? w - 2 : 0);
    y0 = std::clamp(y0, 0, h - 2 >= 0 ? h - 2 : 0);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    for (int c = 0; c < img.channels; ++c) {
        const double v00 = img.at(x0, y0, c);
        const double v10 = img.at(x1, y0, c);
        const double v01 = img.at(x0, y1, c);
        const double v11 = img.at(x1, y1, c);
        const double v = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
                         fy * ((1.0 - fx) * v01 + fx * v11);
        out[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
}

ImageU8 resize(const ImageU8& img, int out_w, int out_h, bool area) {
    if (out_w < 1 || out_h < 1) throw InvalidInputError("resize: output dims must be >= 1");
    if (img.empty()) throw InvalidInputError("resize: empty source image");
    ImageU8 out(out_w, out_h, img.channels);
    if (area) {
        // Box filter over the source footprint of each output pixel.
        const double sx = static_cast<double>(img.width) / out_w;
        const double sy = static_cast<double>(img.height) / out_h;
        for (int y = 0; y < out_h; ++y) {
            const int y0 = static_cast<int>(std::floor(y * sy));
            const int y1 = std::max(y0 + 1, static_cast<int>(std::ceil((y + 1) * sy)));
            for (int x = 0; x < out_w; ++x) {
                const int x0 = static_cast<int>(std::floor(x * sx));
                const int x1 = std::max(x0 + 1, static_cast<int>(std::ceil((x + 1) * sx)));
                for (int c = 0; c < img.channels; ++c) {
                    double acc = 0.0;
                    int n = 0;
                    for (int yy = y0; yy < y1 && yy < img.height; ++yy) {
                        for (int xx = x0; xx < x1 && xx < img.width; ++xx) {
                            acc += img.at(xx, yy, c);
                            ++n;
                        }
                    }
                    out.at(x, y, c) = static_cast<std::uint8_t>(
                        std::clamp(std::lround(acc / std::max(n, 1)), 0l, 255l));
                }
            }
        }
        return out;
    }
    // Bilinear, pixel centers aligned edge-to-edge.
    std::vector<std::uint8_t> fill(img.channels, 0);
    const double sx = static_cast<double>(img.width) / out_w;
    const double sy = static_cast<double>(img.height) / out_h;
    std::vector<std::uint8_t> px(img.channels);
    for (int y = 0; y < out_h; ++y) {
        const double srcy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
        for (int x = 0; x < out_w; ++x) {
            const double srcx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
            sample(img, srcx, srcy, Interp::Bilinear, fill.data(), px.data());
            for (int c = 0; c < img.channels; ++c) out.at(x, y, c) = px[c];
        }
    }
    return out;
}

void paste_clipped(ImageU8& dst, const ImageU8& src, int ox, int oy) {
    if (dst.channels != src.channels) {
        throw InvalidInputError("paste_clipped: channel mismatch");
    }
    const int x0 = std::max(0, ox);
    const int y0 = std::max(0, oy);
    const int x1 = std::min(dst.width, ox + src.width);
    const int y1 = std::min(dst.height, oy + src.height);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                dst.at(x, y, c) = src.at(x - ox, y - oy, c);
            }
        }
    }
}

} // namespace selfiekit
