// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/mesh.hpp"

#include <cmath>
#include <fstream>

#include <Eigen/Geometry>

#include "selfiekit/errors.hpp"

namespace selfiekit {

void TexturedMesh::validate() const {
    if (colors.size() != vertices.size()) {
        throw InvalidInputError("mesh: color count does not match vertex count");
    }
    const auto n = static_cast<std::uint32_t>(vertices.size());
    for (const auto& tri : triangles) {
        for (std::uint32_t idx : tri) {
            if (idx >= n) throw InvalidInputError("mesh: triangle index out of range");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw InvalidInputError("mesh: degenerate triangle with repeated vertex index");
        }
    }
    for (const auto& c : colors) {
        for (int k = 0; k < 3; ++k) {
            if (!(c[k] >= 0.0 && c[k] <= 1.0)) {
                throw InvalidInputError("mesh: vertex color outside [0,1]");
            }
        }
    }
}

std::vector<Eigen::Vector3d> TexturedMesh::vertex_normals() const {
    std::vector<Eigen::Vector3d> normals(vertices.size(), Eigen::Vector3d::Zero());
    for (const auto& tri : triangles) {
        const Eigen::Vector3d& a = vertices[tri[0]];
        const Eigen::Vector3d e1 = vertices[tri[1]] - a;
        const Eigen::Vector3d e2 = vertices[tri[2]] - a;
        const Eigen::Vector3d fn = e1.cross(e2); // magnitude = 2 * area
        for (std::uint32_t idx : tri) normals[idx] += fn;
    }
    for (auto& nrm : normals) {
        const double len = nrm.norm();
        if (len > 0.0) nrm /= len;
    }
    return normals;
}

double TexturedMesh::surface_area() const {
    double area = 0.0;
    for (const auto& tri : triangles) {
        const Eigen::Vector3d& a = vertices[tri[0]];
        const Eigen::Vector3d e1 = vertices[tri[1]] - a;
        const Eigen::Vector3d e2 = vertices[tri[2]] - a;
        area += 0.5 * e1.cross(e2).norm();
    }
    return area;
}

namespace {

std::uint8_t to_u8(double c) {
    const double v = std::lround(c * 255.0);
    return static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
}

} // namespace

void write_ply(const std::filesystem::path& path, const TexturedMesh& mesh) {
    mesh.validate();
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    out.precision(9);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        const auto& c = mesh.colors[i];
        out << static_cast<float>(v.x()) << ' ' << static_cast<float>(v.y()) << ' '
            << static_cast<float>(v.z()) << ' ' << int(to_u8(c.x())) << ' '
            << int(to_u8(c.y())) << ' ' << int(to_u8(c.z())) << '\n';
    }
    for (const auto& tri : mesh.triangles) {
        out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace selfiekit
