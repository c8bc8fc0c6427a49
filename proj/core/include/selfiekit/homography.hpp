// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Core>

namespace selfiekit {

/// Planar projective transform, stored normalized: ‖h‖_F = 1 and h(2,2) ≥ 0.
struct Homography {
    Eigen::Matrix3d h = Eigen::Matrix3d::Identity() / std::sqrt(3.0);

    /// Rescales to the canonical normalization (throws on zero or
    /// non-finite matrices).
    static Homography from_matrix(const Eigen::Matrix3d& m);

    Eigen::Vector2d apply(const Eigen::Vector2d& p) const;
    Homography inverse() const; // throws DegenerateError when singular

    /// Throws InvalidInputError when not normalized or singular.
    void validate() const;
};

/// Normalized DLT: Hartley-normalize both point sets, solve the stacked
/// 2n×9 system by smallest singular vector, denormalize. Needs ≥ 4
/// correspondences (InsufficientDataError) in a non-degenerate configuration
/// (DegenerateError).
Homography estimate_homography(const std::vector<Eigen::Vector2d>& src,
                               const std::vector<Eigen::Vector2d>& dst);

/// JSON row-major 9-float array.
Homography read_homography(const std::filesystem::path& path);
void write_homography(const std::filesystem::path& path, const Homography& h);

} // namespace selfiekit
