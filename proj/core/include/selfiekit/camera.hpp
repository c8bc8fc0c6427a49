// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

namespace selfiekit {

/// Pinhole camera looking at subject_center from distance_d along its local
/// +z axis. The effective focal length is coupled to distance: f = d · f0,
/// always recomputed so the subject plane keeps constant image scale while
/// perspective distortion varies with d.
struct Camera {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity(); // world -> camera
    double distance_d = 1.0;
    double focal_f0 = 2.9;
    int image_size = 512;
    Eigen::Vector3d subject_center = Eigen::Vector3d::Zero();

    double focal() const { return distance_d * focal_f0; }
    double focal_pixels() const { return focal() * image_size; }

    /// Camera center in world coordinates: subject_center - d * R^T * e_z.
    Eigen::Vector3d position() const {
        return subject_center - distance_d * rotation.transpose().col(2);
    }

    /// World point into camera coordinates (+z towards the scene).
    Eigen::Vector3d to_camera(const Eigen::Vector3d& p) const {
        return rotation * (p - position());
    }

    /// Principal point; pixel centers sit at integer coordinates.
    double principal() const { return (image_size - 1) / 2.0; }

    /// Throws InvalidInputError on non-orthonormal rotation (1e-9),
    /// non-positive distance/focal, or image_size < 1.
    void validate() const;
};

struct Projection {
    Eigen::Vector2d pixel; // sub-pixel coordinates, pixel centers at integers
    double depth = 0.0;    // camera-space z
    bool valid = false;    // false when the point lies behind the camera
};

/// Standard pinhole projection with f = d·f0 and the principal point at the
/// image center. Throws DegenerateError for a point at the camera center.
Projection project(const Camera& camera, const Eigen::Vector3d& point);

} // namespace selfiekit
