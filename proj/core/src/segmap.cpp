// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/segmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

#include "selfiekit/errors.hpp"

namespace selfiekit {

LabelSet extract_label_set(const SemanticMap& map, int min_pixels,
                           const std::set<LabelGroup>& groups) {
    map.validate();
    if (min_pixels < 0) throw InvalidInputError("extract_label_set: negative min_pixels");
    std::array<std::size_t, 256> histogram{};
    for (std::uint8_t l : map.labels) ++histogram[l];
    LabelSet out;
    for (const auto& [id, entry] : map.taxonomy) {
        if (id < 0 || id > 255) continue;
        if (histogram[id] >= static_cast<std::size_t>(min_pixels) && groups.count(entry.group)) {
            out.insert(id);
        }
    }
    return out;
}

int match_score(const LabelSet& p_r, const LabelSet& p_u, const LabelSet& p_l,
                const LabelSet& p_s) {
    int score = 0;
    for (int id : p_r) {
        if (p_u.count(id) || p_l.count(id) || p_s.count(id)) ++score;
    }
    return score;
}

std::vector<RankedPhoto> rank_collection(const LabelSet& p_u, const LabelSet& p_l,
                                         const LabelSet& p_s,
                                         const std::vector<SemanticMap>& collection,
                                         int min_pixels) {
    std::vector<RankedPhoto> ranked;
    ranked.reserve(collection.size());
    for (std::size_t i = 0; i < collection.size(); ++i) {
        const LabelSet p_r = extract_label_set(collection[i], min_pixels);
        ranked.push_back({i, match_score(p_r, p_u, p_l, p_s)});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedPhoto& a, const RankedPhoto& b) { return a.score > b.score; });
    return ranked;
}

BBox person_bbox(const SemanticMap& map) {
    map.validate();
    std::array<bool, 256> person{};
    for (const auto& [id, entry] : map.taxonomy) {
        if (id >= 0 && id <= 255) person[id] = entry.group != LabelGroup::Other;
    }
    BBox box{map.width, map.height, 0, 0};
    bool any = false;
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (!person[map.label_at(x, y)]) continue;
            any = true;
            box.x0 = std::min(box.x0, x);
            box.y0 = std::min(box.y0, y);
            box.x1 = std::max(box.x1, x + 1);
            box.y1 = std::max(box.y1, y + 1);
        }
    }
    if (!any) throw NotFoundError("person_bbox: no person pixels");
    return box;
}

Mask scale_bbox_to_mask(const BBox& bbox, double factor, int image_width, int image_height) {
    bbox.validate();
    if (!(factor > 0.0)) throw InvalidInputError("scale_bbox_to_mask: factor must be positive");
    if (image_width < 1 || image_height < 1) {
        throw InvalidInputError("scale_bbox_to_mask: empty image");
    }
    const double cx = (bbox.x0 + bbox.x1) / 2.0;
    const double cy = (bbox.y0 + bbox.y1) / 2.0;
    const long w = std::lround(bbox.width() * factor);
    const long h = std::lround(bbox.height() * factor);
    const int x0 = std::clamp<long>(std::lround(cx - w / 2.0), 0, image_width);
    const int y0 = std::clamp<long>(std::lround(cy - h / 2.0), 0, image_height);
    const int x1 = std::clamp<long>(x0 + w, 0, image_width);
    const int y1 = std::clamp<long>(y0 + h, 0, image_height);

    Mask mask(image_width, image_height);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) mask.at(x, y) = 1;
    }
    return mask;
}

Mask dilate(const Mask& mask, int radius_px) {
    if (radius_px < 0) throw InvalidInputError("dilate: negative radius");
    if (radius_px == 0) return mask;
    const int w = mask.width, h = mask.height;
    // Square structuring element => separable max filter.
    Mask rows(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int lo = std::max(0, x - radius_px), hi = std::min(w - 1, x + radius_px);
            std::uint8_t v = 0;
            for (int i = lo; i <= hi && !v; ++i) v = mask.at(i, y);
            rows.at(x, y) = v;
        }
    }
    Mask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int lo = std::max(0, y - radius_px), hi = std::min(h - 1, y + radius_px);
            std::uint8_t v = 0;
            for (int j = lo; j <= hi && !v; ++j) v = rows.at(x, j);
            out.at(x, y) = v;
        }
    }
    return out;
}

namespace {

constexpr int kGaussRadius = 5;
constexpr double kGaussSigma = 1.4;

// Separable Gaussian with replicate border.
std::vector<double> gaussian_blur(const std::vector<double>& src, int w, int h) {
    std::array<double, 2 * kGaussRadius + 1> kernel;
    double sum = 0.0;
    for (int i = -kGaussRadius; i <= kGaussRadius; ++i) {
        kernel[i + kGaussRadius] = std::exp(-(i * i) / (2.0 * kGaussSigma * kGaussSigma));
        sum += kernel[i + kGaussRadius];
    }
    for (double& k : kernel) k /= sum;

    std::vector<double> tmp(src.size()), dst(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -kGaussRadius; i <= kGaussRadius; ++i) {
                const int xi = std::clamp(x + i, 0, w - 1);
                acc += kernel[i + kGaussRadius] * src[static_cast<std::size_t>(y) * w + xi];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -kGaussRadius; i <= kGaussRadius; ++i) {
                const int yi = std::clamp(y + i, 0, h - 1);
                acc += kernel[i + kGaussRadius] * tmp[static_cast<std::size_t>(yi) * w + x];
            }
            dst[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return dst;
}

struct Gradients {
    std::vector<double> gx, gy;
};

// 3x3 Sobel with replicate border.
Gradients sobel(const std::vector<double>& src, int w, int h) {
    Gradients g{std::vector<double>(src.size()), std::vector<double>(src.size())};
    auto at = [&](int x, int y) {
        return src[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            g.gx[i] = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)) -
                      (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            g.gy[i] = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)) -
                      (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
        }
    }
    return g;
}

// Gradient direction quantized to the 4 canonical NMS bins (mod 180°).
int direction_bin(double gx, double gy) {
    const double angle = std::atan2(gy, gx) * 180.0 / M_PI; // [-180, 180]
    const double a = angle < 0.0 ? angle + 180.0 : angle;   // [0, 180]
    if (a < 22.5 || a >= 157.5) return 0; // horizontal gradient
    if (a < 67.5) return 1;               // diagonal down-right
    if (a < 112.5) return 2;              // vertical gradient
    return 3;                             // diagonal down-left
}

} // namespace

ImageU8 canny_from_semantic(const SemanticMap& map, double low, double high) {
    map.validate();
    if (!(low >= 0.0 && high >= low)) {
        throw InvalidInputError("canny_from_semantic: need high >= low >= 0");
    }
    const int w = map.width, h = map.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::array<bool, 256> present{};
    for (std::uint8_t l : map.labels) present[l] = true;

    // Each label boundary shows up in exactly the two labels it separates, so
    // summing per-label gradient magnitudes and halving gives one step-shaped
    // response per boundary, independent of the numeric label values.
    std::vector<double> mag(n, 0.0);
    std::vector<double> best(n, -1.0); // strongest single-label magnitude
    std::vector<std::uint8_t> bin(n, 0);
    std::vector<double> indicator(n);
    for (int label = 0; label < 256; ++label) {
        if (!present[label]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            indicator[i] = map.labels[i] == label ? 255.0 : 0.0;
        }
        const std::vector<double> smooth = gaussian_blur(indicator, w, h);
        const Gradients g = sobel(smooth, w, h);
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::hypot(g.gx[i], g.gy[i]);
            mag[i] += 0.5 * m;
            if (m > best[i]) { // direction follows the dominant label
                best[i] = m;
                bin[i] = static_cast<std::uint8_t>(direction_bin(g.gx[i], g.gy[i]));
            }
        }
    }

    // Non-maximum suppression along the gradient direction; the >=/> pair
    // keeps exactly one pixel when two neighbours tie across a boundary.
    constexpr int kOffsets[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    auto mag_at = [&](int x, int y) {
        if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
        return mag[static_cast<std::size_t>(y) * w + x];
    };
    std::vector<std::uint8_t> thin(n, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (mag[i] <= 0.0) continue;
            const int dx = kOffsets[bin[i]][0], dy = kOffsets[bin[i]][1];
            if (mag[i] >= mag_at(x - dx, y - dy) && mag[i] > mag_at(x + dx, y + dy)) thin[i] = 1;
        }
    }

    // Hysteresis: grow strong edges through weak ones, 8-connected.
    ImageU8 edges(w, h, 1);
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (thin[i] && mag[i] >= high) {
                edges.at(x, y) = 255;
                queue.emplace_back(x, y);
            }
        }
    }
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t i = static_cast<std::size_t>(ny) * w + nx;
                if (thin[i] && mag[i] >= low && edges.at(nx, ny) == 0) {
                    edges.at(nx, ny) = 255;
                    queue.emplace_back(nx, ny);
                }
            }
        }
    }
    return edges;
}

} // namespace selfiekit
