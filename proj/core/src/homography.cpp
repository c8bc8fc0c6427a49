// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/homography.hpp"

#include <cmath>
#include <fstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "selfiekit/errors.hpp"

namespace selfiekit {

Homography Homography::from_matrix(const Eigen::Matrix3d& m) {
    if (!m.allFinite()) throw InvalidInputError("homography: non-finite matrix");
    const double norm = m.norm();
    if (!(norm > 0.0)) throw InvalidInputError("homography: zero matrix");
    Homography out;
    out.h = m / norm;
    double sign = out.h(2, 2);
    if (sign == 0.0) {
        // Fall back to the first nonzero entry so the sign stays deterministic.
        for (int i = 0; i < 9 && sign == 0.0; ++i) sign = out.h(i / 3, i % 3);
    }
    if (sign < 0.0) out.h = -out.h;
    return out;
}

void Homography::validate() const {
    if (!(std::abs(h.norm() - 1.0) < 1e-9)) {
        throw InvalidInputError("homography: not Frobenius-normalized");
    }
    if (h(2, 2) < 0.0) throw InvalidInputError("homography: negative h(2,2)");
    if (!(std::abs(h.determinant()) > 1e-12)) {
        throw InvalidInputError("homography: singular matrix");
    }
}

Eigen::Vector2d Homography::apply(const Eigen::Vector2d& p) const {
    const Eigen::Vector3d q = h * Eigen::Vector3d(p.x(), p.y(), 1.0);
    if (std::abs(q.z()) < 1e-15) throw DegenerateError("homography: point maps to infinity");
    return Eigen::Vector2d(q.x() / q.z(), q.y() / q.z());
}

Homography Homography::inverse() const {
    if (!(std::abs(h.determinant()) > 1e-12)) {
        throw DegenerateError("homography: singular, cannot invert");
    }
    return from_matrix(h.inverse());
}

namespace {

struct Normalized {
    Eigen::Matrix3d transform;
    std::vector<Eigen::Vector2d> points;
};

// Hartley conditioning: centroid to the origin, mean distance sqrt(2).
Normalized hartley_normalize(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    double mean_dist = 0.0;
    for (const auto& p : pts) mean_dist += (p - centroid).norm();
    mean_dist /= static_cast<double>(pts.size());
    const double s = mean_dist > 0.0 ? std::sqrt(2.0) / mean_dist : 1.0;

    Normalized out;
    out.transform << s, 0.0, -s * centroid.x(), 0.0, s, -s * centroid.y(), 0.0, 0.0, 1.0;
    out.points.reserve(pts.size());
    for (const auto& p : pts) out.points.push_back(s * (p - centroid));
    return out;
}

} // namespace

Homography estimate_homography(const std::vector<Eigen::Vector2d>& src,
                               const std::vector<Eigen::Vector2d>& dst) {
    if (src.size() != dst.size()) {
        throw InvalidInputError("estimate_homography: src/dst length mismatch");
    }
    if (src.size() < 4) {
        throw InsufficientDataError("estimate_homography: needs >= 4 correspondences");
    }
    const Normalized ns = hartley_normalize(src);
    const Normalized nd = hartley_normalize(dst);

    const auto n = static_cast<Eigen::Index>(src.size());
    Eigen::MatrixXd a(2 * n, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = ns.points[i].x(), y = ns.points[i].y();
        const double u = nd.points[i].x(), v = nd.points[i].y();
        a.row(2 * i) << -x, -y, -1.0, 0.0, 0.0, 0.0, u * x, u * y, u;
        a.row(2 * i + 1) << 0.0, 0.0, 0.0, -x, -y, -1.0, v * x, v * y, v;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // A unique solution needs rank 8: the second-smallest of the 9 possible
    // singular values (index 7; present for any n >= 4) must be non-zero.
    if (!(sv(0) > 0.0) || sv(7) < 1e-10 * sv(0)) {
        throw DegenerateError("estimate_homography: degenerate point configuration");
    }
    const Eigen::VectorXd v = svd.matrixV().col(8);
    Eigen::Matrix3d hn;
    hn << v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8);

    const Eigen::Matrix3d h = nd.transform.inverse() * hn * ns.transform;
    Homography out = Homography::from_matrix(h);
    if (!(std::abs(out.h.determinant()) > 1e-12)) {
        throw DegenerateError("estimate_homography: singular solution");
    }
    return out;
}

Homography read_homography(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad homography JSON " + path.string() + ": " + e.what());
    }
    if (!j.is_array() || j.size() != 9) {
        throw IoError("homography JSON must be a 9-element array: " + path.string());
    }
    Eigen::Matrix3d m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = j[i].get<double>();
    Homography out = Homography::from_matrix(m);
    out.validate();
    return out;
}

void write_homography(const std::filesystem::path& path, const Homography& h) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < 9; ++i) j.push_back(h.h(i / 3, i % 3));
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace selfiekit
