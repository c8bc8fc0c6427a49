// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/face_align.hpp"

#include <array>

#include "selfiekit/errors.hpp"

namespace selfiekit {

namespace {

Eigen::Vector2d rot90(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

struct QuadAxes {
    Eigen::Vector2d c, x, y; // centre and half-extent axes
};

QuadAxes quad_axes(const FaceLandmarks& lm) {
    const Eigen::Vector2d e2e = lm.eye_right - lm.eye_left;
    const Eigen::Vector2d eye_avg = (lm.eye_left + lm.eye_right) / 2.0;
    const Eigen::Vector2d e2m = lm.mouth_avg - eye_avg;
    if (e2e.norm() < 1e-9) throw DegenerateError("align_face: eyes coincident");

    Eigen::Vector2d x = e2e - rot90(e2m);
    if (x.norm() < 1e-9) throw DegenerateError("align_face: degenerate landmark triangle");
    x.normalize();
    x *= std::max(e2e.norm() * 2.0, e2m.norm() * 1.8);

    QuadAxes axes;
    axes.x = x;
    axes.y = rot90(x);
    axes.c = eye_avg + 0.1 * e2m;
    return axes;
}

} // namespace

std::array<Eigen::Vector2d, 4> face_align_quad(const FaceLandmarks& landmarks) {
    const QuadAxes a = quad_axes(landmarks);
    return {a.c - a.x - a.y, a.c - a.x + a.y, a.c + a.x + a.y, a.c + a.x - a.y};
}

ImageU8 align_face(const ImageU8& image, const FaceLandmarks& landmarks, int out_size,
                   const std::uint8_t fill[3]) {
    if (out_size < 1) throw InvalidInputError("align_face: out_size must be >= 1");
    const QuadAxes a = quad_axes(landmarks);
    const Eigen::Vector2d origin = a.c - a.x - a.y;
    const std::uint8_t zero_fill[3] = {0, 0, 0};
    const std::uint8_t* fc = fill ? fill : zero_fill;

    ImageU8 out(out_size, out_size, image.channels);
    std::uint8_t px[3];
    for (int j = 0; j < out_size; ++j) {
        for (int i = 0; i < out_size; ++i) {
            const double u = (i + 0.5) / out_size;
            const double v = (j + 0.5) / out_size;
            const Eigen::Vector2d src = origin + u * 2.0 * a.x + v * 2.0 * a.y;
            sample(image, src.x(), src.y(), Interp::Bilinear, fc, px);
            for (int c = 0; c < image.channels; ++c) out.at(i, j, c) = px[c];
        }
    }
    return out;
}

Eigen::Vector2d face_align_project(const FaceLandmarks& landmarks, int out_size,
                                   const Eigen::Vector2d& image_point) {
    const QuadAxes a = quad_axes(landmarks);
    const Eigen::Vector2d rel = image_point - (a.c - a.x - a.y);
    const double u = rel.dot(a.x) / (2.0 * a.x.squaredNorm());
    const double v = rel.dot(a.y) / (2.0 * a.y.squaredNorm());
    return {u * out_size - 0.5, v * out_size - 0.5};
}

} // namespace selfiekit
