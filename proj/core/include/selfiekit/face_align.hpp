// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "selfiekit/image.hpp"

namespace selfiekit {

struct FaceLandmarks {
    Eigen::Vector2d eye_left;  // subject's left eye as seen in the image
    Eigen::Vector2d eye_right;
    Eigen::Vector2d mouth_avg;
};

/// FFHQ-style alignment: builds the oriented crop quad from the eye-to-eye
/// axis corrected by the eye-to-mouth direction, sized by
/// max(2.0·‖eye_to_eye‖, 1.8·‖eye_to_mouth‖), and resamples it to a square
/// out_size crop (bilinear, replicate-free: outside pixels read the fill).
/// Throws DegenerateError for coincident landmarks.
ImageU8 align_face(const ImageU8& image, const FaceLandmarks& landmarks, int out_size = 512,
                   const std::uint8_t fill[3] = nullptr);

/// The source-image quad the aligned crop samples, in pixel coordinates:
/// corners (c-x-y, c-x+y, c+x+y, c+x-y) mapping to the output's
/// top-left, bottom-left, bottom-right, top-right corners.
std::array<Eigen::Vector2d, 4> face_align_quad(const FaceLandmarks& landmarks);

/// Where an image point lands in the aligned out_size crop.
Eigen::Vector2d face_align_project(const FaceLandmarks& landmarks, int out_size,
                                   const Eigen::Vector2d& image_point);

} // namespace selfiekit
