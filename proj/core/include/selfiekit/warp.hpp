// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "selfiekit/homography.hpp"
#include "selfiekit/image.hpp"
#include "selfiekit/keypoints.hpp"

namespace selfiekit {

/// Inverse-mapping warp: each output pixel samples the input at
/// H⁻¹·(x, y, 1). Out-of-bounds samples take the fill color (grey-scale fill
/// reuses channel 0). Use Interp::Nearest for label images.
ImageU8 warp_image(const ImageU8& image, const Homography& h, int out_width, int out_height,
                   Interp interp = Interp::Bilinear,
                   const std::uint8_t fill[3] = nullptr);

/// Simulates a close-up selfie of one body part from a full-body photo:
/// estimates the homography sending the part's detected joints to their
/// typical selfie positions, warps onto the typical canvas, and resizes to
/// out_size. Joints below the confidence threshold are treated as missing;
/// fewer than 4 usable correspondences raises SimulationFailureError.
/// An empty joint_names uses part_joint_names(part).
ImageU8 simulate_selfie(const ImageU8& fullbody_image, const KeypointSet& detected,
                        const KeypointSet& typical, BodyPart part, int out_size,
                        const std::vector<std::string>& joint_names = {});

/// The homography used by simulate_selfie, exposed for inspection/export.
Homography selfie_homography(const KeypointSet& detected, const KeypointSet& typical,
                             BodyPart part, const std::vector<std::string>& joint_names = {});

/// Per-joint coordinate-wise mean over the example sets that contain the
/// joint above the confidence threshold. All examples must share one
/// image_size; joints seen in no example are dropped.
KeypointSet typical_keypoints(const std::vector<KeypointSet>& examples);

} // namespace selfiekit
