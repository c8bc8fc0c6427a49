// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "selfiekit/errors.hpp"

namespace selfiekit {

/// Regular 3D grid of scalar density plus RGB color, sampled from a
/// generative head model and stored on disk. Grids are x-fastest:
/// node (i, j, k) has linear index i + nx * (j + ny * k).
struct DensityVolume {
    std::array<int, 3> dims{0, 0, 0};        // nx, ny, nz
    Eigen::Vector3d origin{0.0, 0.0, 0.0};   // world position of node (0,0,0)
    Eigen::Vector3d spacing{1.0, 1.0, 1.0};  // per-axis node distance, world units
    std::vector<float> density;              // nx*ny*nz scalars
    std::vector<float> color;                // nx*ny*nz RGB triples, channels in [0,1]

    std::size_t node_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }
    std::size_t node_index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
    }
    Eigen::Vector3d node_position(int i, int j, int k) const {
        return origin + Eigen::Vector3d(i * spacing.x(), j * spacing.y(), k * spacing.z());
    }

    /// Throws InvalidInputError unless dims >= 2 per axis, spacing > 0,
    /// grid sizes agree, all values finite, and color channels lie in [0,1].
    void validate() const;
};

/// Optional 3D face landmarks carried in the volume sidecar; used to run
/// face alignment on rendered images without a landmark detector.
struct VolumeLandmarks {
    Eigen::Vector3d eye_left;
    Eigen::Vector3d eye_right;
    Eigen::Vector3d mouth_avg;
};

/// On-disk form: <stem>.raw holds little-endian f32 density then color
/// (x-fastest), <stem>.json holds {dims, origin, spacing} plus optional
/// {landmarks: {eye_left, eye_right, mouth_avg}}.
struct VolumeFile {
    DensityVolume volume;
    std::optional<VolumeLandmarks> landmarks;
};

/// Loads a volume given the path of its JSON sidecar header.
VolumeFile read_volume(const std::filesystem::path& header_path);

/// Writes <stem>.raw and <stem>.json for the given stem path (no extension).
void write_volume(const std::filesystem::path& stem, const DensityVolume& volume,
                  const std::optional<VolumeLandmarks>& landmarks = std::nullopt);

} // namespace selfiekit
