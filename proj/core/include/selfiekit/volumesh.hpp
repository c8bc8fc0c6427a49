// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "selfiekit/mesh.hpp"
#include "selfiekit/volume.hpp"

namespace selfiekit {

/// Extracts the iso_level surface with the 256-case marching-cubes table and
/// linear edge interpolation. Vertices on shared cube edges are deduplicated
/// so closed surfaces come out watertight. Winding is outward for the
/// density > iso = inside convention. Output colors are all zero.
TexturedMesh marching_cubes(const DensityVolume& volume, double iso_level);

/// Copies each vertex color from the nearest grid node (Euclidean distance,
/// ties broken by lowest linear node index). Idempotent; empty mesh returned
/// unchanged.
TexturedMesh assign_nearest_colors(TexturedMesh mesh, const DensityVolume& volume);

} // namespace selfiekit
