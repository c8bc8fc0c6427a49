// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "selfiekit/camera.hpp"
#include "selfiekit/mesh.hpp"

namespace selfiekit {

/// Single directional light, no shadows. light_direction points from the
/// surface towards the light, expressed in camera coordinates; the default
/// (0,0,-1) is a headlight along the view axis.
struct PhongLighting {
    Eigen::Vector3d light_direction = Eigen::Vector3d(0.0, 0.0, -1.0);
    double ambient = 0.3;
    double diffuse = 0.6;
    double specular = 0.1;
    double shininess = 16.0;

    /// Throws InvalidInputError on non-unit light direction (1e-9),
    /// coefficients outside [0,1], or shininess < 1.
    void validate() const;
};

struct RenderedImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;   // width*height*3, row-major
    std::vector<float> depth;        // camera-space z; +inf where uncovered
};

/// Z-buffered rasterization with perspective-correct interpolation and
/// per-pixel Phong shading: albedo·(ka + kd·max(0, n·l)) + ks·max(0, r·v)^s,
/// clamped to [0,1]. Shading is two-sided (normals flipped to face the
/// viewer) and back faces are not culled. Pixels no triangle covers get the
/// background color.
RenderedImage rasterize_phong(const TexturedMesh& mesh, const Camera& camera,
                              const PhongLighting& lighting,
                              const Eigen::Vector3d& background = Eigen::Vector3d::Zero());

struct DistanceSeries {
    std::vector<double> input_distances;
    std::vector<RenderedImage> inputs; // one per input distance
    RenderedImage ground_truth;
    double gt_distance = 0.0;
};

/// Renders the mesh once per input distance plus once at gt_distance, with
/// rotation and subject framing held fixed and f = d·f0 recomputed per shot.
/// Defaults follow the distance ladder {1, 1.3, 1.6, 1.9} with ground truth
/// at 10.
DistanceSeries render_distance_series(
    const TexturedMesh& mesh, const Camera& base_camera, const PhongLighting& lighting,
    const std::vector<double>& input_distances = {1.0, 1.3, 1.6, 1.9},
    double gt_distance = 10.0,
    const Eigen::Vector3d& background = Eigen::Vector3d::Zero());

} // namespace selfiekit
