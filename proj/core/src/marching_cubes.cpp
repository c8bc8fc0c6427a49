// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/volumesh.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "selfiekit/errors.hpp"

namespace selfiekit {

namespace {

#include "mc_tables.inc"

// Cube corner offsets (classic Bourke layout: bottom face 0-1-2-3 CCW at z,
// top face 4-5-6-7 at z+1).
constexpr int kCorner[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
};

// Corner pair for each of the 12 cube edges.
constexpr int kEdgeCorner[12][2] = {
    {0, 1}, {1, 2}, {2, 3}, {3, 0},
    {4, 5}, {5, 6}, {6, 7}, {7, 4},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
};

// For deduplication every grid edge gets a global key: the linear index of
// its lower node times 3 plus the axis it runs along.
constexpr int kEdgeAxis[12] = {0, 1, 0, 1, 0, 1, 0, 1, 2, 2, 2, 2};
// Local corner holding the lower node of each edge (min coordinate on kEdgeAxis).
constexpr int kEdgeLowCorner[12] = {0, 1, 3, 0, 4, 5, 7, 4, 0, 1, 2, 3};

} // namespace

TexturedMesh marching_cubes(const DensityVolume& volume, double iso_level) {
    volume.validate();
    if (!std::isfinite(iso_level)) throw InvalidInputError("marching_cubes: iso_level must be finite");

    const int nx = volume.dims[0], ny = volume.dims[1], nz = volume.dims[2];
    TexturedMesh mesh;
    // Global edge key -> index of the vertex already emitted on that edge.
    std::unordered_map<std::uint64_t, std::uint32_t> edge_vertex;

    auto density_at = [&](int i, int j, int k) {
        return static_cast<double>(volume.density[volume.node_index(i, j, k)]);
    };

    auto vertex_on_edge = [&](int ci, int cj, int ck, int edge) -> std::uint32_t {
        const int* low = kCorner[kEdgeLowCorner[edge]];
        const int axis = kEdgeAxis[edge];
        const int li = ci + low[0], lj = cj + low[1], lk = ck + low[2];
        const std::uint64_t key =
            static_cast<std::uint64_t>(volume.node_index(li, lj, lk)) * 3 + axis;
        if (auto it = edge_vertex.find(key); it != edge_vertex.end()) return it->second;

        int hi[3] = {li, lj, lk};
        ++hi[axis];
        const double d_lo = density_at(li, lj, lk);
        const double d_hi = density_at(hi[0], hi[1], hi[2]);
        // Interpolate from the lower node so shared edges agree bit-exactly
        // regardless of which cube asked first.
        double t = (d_hi == d_lo) ? 0.5 : (iso_level - d_lo) / (d_hi - d_lo);
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);

        Eigen::Vector3d pos = volume.node_position(li, lj, lk);
        pos[axis] += t * volume.spacing[axis];

        const auto idx = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(pos);
        edge_vertex.emplace(key, idx);
        return idx;
    };

    for (int k = 0; k + 1 < nz; ++k) {
        for (int j = 0; j + 1 < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                int cube = 0;
                for (int c = 0; c < 8; ++c) {
                    const double d = density_at(i + kCorner[c][0], j + kCorner[c][1],
                                                k + kCorner[c][2]);
                    if (d < iso_level) cube |= 1 << c;
                }
                if (kEdgeTable[cube] == 0) continue;
                for (int t = 0; kTriTable[cube][t] != -1; t += 3) {
                    const std::uint32_t a = vertex_on_edge(i, j, k, kTriTable[cube][t]);
                    const std::uint32_t b = vertex_on_edge(i, j, k, kTriTable[cube][t + 1]);
                    const std::uint32_t c = vertex_on_edge(i, j, k, kTriTable[cube][t + 2]);
                    if (a == b || b == c || a == c) continue; // collapsed on a corner
                    mesh.triangles.push_back({a, b, c});
                }
            }
        }
    }

    mesh.colors.assign(mesh.vertices.size(), Eigen::Vector3d::Zero());
    return mesh;
}

TexturedMesh assign_nearest_colors(TexturedMesh mesh, const DensityVolume& volume) {
    volume.validate();
    // Per-axis nearest node: uniform spacing makes Euclidean nearest separable.
    // ceil(t - 0.5) sends half-way points down, i.e. to the lower linear index.
    auto nearest = [](double t, int n) {
        const auto r = static_cast<int>(std::ceil(t - 0.5));
        return r < 0 ? 0 : (r >= n ? n - 1 : r);
    };
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        const Eigen::Vector3d rel = mesh.vertices[v] - volume.origin;
        const int i = nearest(rel.x() / volume.spacing.x(), volume.dims[0]);
        const int j = nearest(rel.y() / volume.spacing.y(), volume.dims[1]);
        const int k = nearest(rel.z() / volume.spacing.z(), volume.dims[2]);
        const std::size_t node = volume.node_index(i, j, k);
        mesh.colors[v] = Eigen::Vector3d(volume.color[node * 3 + 0],
                                         volume.color[node * 3 + 1],
                                         volume.color[node * 3 + 2]);
    }
    return mesh;
}

} // namespace selfiekit
