// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

namespace selfiekit {

/// Triangle mesh with per-vertex RGB color in [0,1]. Colors default to zero
/// until textured. Triangles index into vertices with consistent outward
/// winding for closed surfaces.
struct TexturedMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3d> colors;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    bool empty() const { return vertices.empty(); }

    /// Throws InvalidInputError on out-of-range indices, repeated indices
    /// within a triangle, or color/vertex count mismatch.
    void validate() const;

    /// Area-weighted vertex normals (unnormalized face normals summed per
    /// vertex, then normalized). Zero vector for isolated vertices.
    std::vector<Eigen::Vector3d> vertex_normals() const;

    double surface_area() const;
};

/// Writes ASCII PLY with per-vertex uchar RGB, rounded from [0,1].
void write_ply(const std::filesystem::path& path, const TexturedMesh& mesh);

} // namespace selfiekit
