// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "selfiekit/errors.hpp"

namespace selfiekit {

namespace {

constexpr double kNearPlane = 1e-6;

std::uint8_t to_u8(double c) {
    const double v = std::lround(std::clamp(c, 0.0, 1.0) * 255.0);
    return static_cast<std::uint8_t>(v);
}

double edge_fn(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double px, double py) {
    return (b.x() - a.x()) * (py - a.y()) - (b.y() - a.y()) * (px - a.x());
}

} // namespace

void PhongLighting::validate() const {
    if (!(std::abs(light_direction.norm() - 1.0) < 1e-9)) {
        throw InvalidInputError("lighting: light_direction must be unit length");
    }
    for (double k : {ambient, diffuse, specular}) {
        if (!(k >= 0.0 && k <= 1.0)) throw InvalidInputError("lighting: coefficients must be in [0,1]");
    }
    if (!(shininess >= 1.0)) throw InvalidInputError("lighting: shininess must be >= 1");
}

RenderedImage rasterize_phong(const TexturedMesh& mesh, const Camera& camera,
                              const PhongLighting& lighting, const Eigen::Vector3d& background) {
    mesh.validate();
    camera.validate();
    lighting.validate();
    if (mesh.empty()) throw InvalidInputError("rasterize_phong: empty mesh");

    const int size = camera.image_size;
    RenderedImage img;
    img.width = img.height = size;
    img.rgb.resize(static_cast<std::size_t>(size) * size * 3);
    img.depth.assign(static_cast<std::size_t>(size) * size,
                     std::numeric_limits<float>::infinity());
    for (int p = 0; p < size * size; ++p) {
        img.rgb[p * 3 + 0] = to_u8(background.x());
        img.rgb[p * 3 + 1] = to_u8(background.y());
        img.rgb[p * 3 + 2] = to_u8(background.z());
    }

    const std::size_t nv = mesh.vertices.size();
    const std::vector<Eigen::Vector3d> world_normals = mesh.vertex_normals();
    std::vector<Eigen::Vector3d> cam(nv);      // camera-space positions
    std::vector<Eigen::Vector3d> normals(nv);  // camera-space normals
    std::vector<Eigen::Vector2d> screen(nv);
    const double f = camera.focal_pixels();
    const double c0 = camera.principal();
    for (std::size_t v = 0; v < nv; ++v) {
        cam[v] = camera.to_camera(mesh.vertices[v]);
        normals[v] = camera.rotation * world_normals[v];
        if (cam[v].z() > kNearPlane) {
            screen[v] = Eigen::Vector2d(f * cam[v].x() / cam[v].z() + c0,
                                        f * cam[v].y() / cam[v].z() + c0);
        }
    }

    const Eigen::Vector3d& l = lighting.light_direction;
    for (const auto& tri : mesh.triangles) {
        const std::uint32_t ia = tri[0], ib = tri[1], ic = tri[2];
        if (cam[ia].z() <= kNearPlane || cam[ib].z() <= kNearPlane || cam[ic].z() <= kNearPlane) {
            continue; // crosses the near plane; clipping not worth it here
        }
        const Eigen::Vector2d &pa = screen[ia], &pb = screen[ib], &pc = screen[ic];
        double area2 = edge_fn(pa, pb, pc.x(), pc.y());
        if (area2 == 0.0) continue;
        const double flip = area2 > 0.0 ? 1.0 : -1.0; // both windings rasterized
        area2 *= flip;

        const int x0 = std::max(0, static_cast<int>(std::ceil(std::min({pa.x(), pb.x(), pc.x()}))));
        const int x1 = std::min(size - 1, static_cast<int>(std::floor(std::max({pa.x(), pb.x(), pc.x()}))));
        const int y0 = std::max(0, static_cast<int>(std::ceil(std::min({pa.y(), pb.y(), pc.y()}))));
        const int y1 = std::min(size - 1, static_cast<int>(std::floor(std::max({pa.y(), pb.y(), pc.y()}))));

        const double iza = 1.0 / cam[ia].z(), izb = 1.0 / cam[ib].z(), izc = 1.0 / cam[ic].z();
        for (int py = y0; py <= y1; ++py) {
            for (int px = x0; px <= x1; ++px) {
                const double w0 = flip * edge_fn(pb, pc, px, py);
                const double w1 = flip * edge_fn(pc, pa, px, py);
                const double w2 = flip * edge_fn(pa, pb, px, py);
                if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
                const double l0 = w0 / area2, l1 = w1 / area2, l2 = w2 / area2;
                const double inv_z = l0 * iza + l1 * izb + l2 * izc;
                const double z = 1.0 / inv_z;
                const std::size_t idx = static_cast<std::size_t>(py) * size + px;
                if (!(z < img.depth[idx])) continue;
                img.depth[idx] = static_cast<float>(z);

                // Perspective-correct weights for attributes.
                const double b0 = l0 * iza * z, b1 = l1 * izb * z, b2 = l2 * izc * z;
                const Eigen::Vector3d pos = b0 * cam[ia] + b1 * cam[ib] + b2 * cam[ic];
                const Eigen::Vector3d albedo =
                    b0 * mesh.colors[ia] + b1 * mesh.colors[ib] + b2 * mesh.colors[ic];
                Eigen::Vector3d n = b0 * normals[ia] + b1 * normals[ib] + b2 * normals[ic];
                const double nlen = n.norm();
                if (nlen > 0.0) {
                    n /= nlen;
                } else {
                    n = (cam[ib] - cam[ia]).cross(cam[ic] - cam[ia]).normalized();
                }
                const Eigen::Vector3d view = -pos.normalized();
                if (n.dot(view) < 0.0) n = -n; // two-sided shading

                const double ndotl = std::max(0.0, n.dot(l));
                const Eigen::Vector3d r = 2.0 * n.dot(l) * n - l;
                const double spec =
                    lighting.specular * std::pow(std::max(0.0, r.dot(view)), lighting.shininess);
                const Eigen::Vector3d rgb =
                    albedo * (lighting.ambient + lighting.diffuse * ndotl) +
                    Eigen::Vector3d::Constant(spec);
                img.rgb[idx * 3 + 0] = to_u8(rgb.x());
                img.rgb[idx * 3 + 1] = to_u8(rgb.y());
                img.rgb[idx * 3 + 2] = to_u8(rgb.z());
            }
        }
    }
    return img;
}

DistanceSeries render_distance_series(const TexturedMesh& mesh, const Camera& base_camera,
                                      const PhongLighting& lighting,
                                      const std::vector<double>& input_distances,
                                      double gt_distance, const Eigen::Vector3d& background) {
    if (input_distances.empty()) {
        throw InvalidInputError("render_distance_series: empty distance list");
    }
    DistanceSeries series;
    series.input_distances = input_distances;
    series.gt_distance = gt_distance;
    Camera cam = base_camera;
    for (double d : input_distances) {
        cam.distance_d = d;
        series.inputs.push_back(rasterize_phong(mesh, cam, lighting, background));
    }
    cam.distance_d = gt_distance;
    series.ground_truth = rasterize_phong(mesh, cam, lighting, background);
    return series;
}

} // namespace selfiekit
