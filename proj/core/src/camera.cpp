// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/camera.hpp"

#include "selfiekit/errors.hpp"

namespace selfiekit {

void Camera::validate() const {
    const Eigen::Matrix3d gram = rotation.transpose() * rotation;
    if (!((gram - Eigen::Matrix3d::Identity()).lpNorm<Eigen::Infinity>() < 1e-9)) {
        throw InvalidInputError("camera: rotation is not orthonormal");
    }
    if (!(distance_d > 0.0)) throw InvalidInputError("camera: distance must be positive");
    if (!(focal_f0 > 0.0)) throw InvalidInputError("camera: focal_f0 must be positive");
    if (image_size < 1) throw InvalidInputError("camera: image_size must be >= 1");
}

Projection project(const Camera& camera, const Eigen::Vector3d& point) {
    const Eigen::Vector3d pc = camera.to_camera(point);
    if (pc.norm() < 1e-12) throw DegenerateError("project: point at the camera center");
    Projection out;
    out.depth = pc.z();
    out.valid = pc.z() > 0.0;
    const double f = camera.focal_pixels();
    const double cxy = camera.principal();
    out.pixel = Eigen::Vector2d(f * pc.x() / pc.z() + cxy, f * pc.y() / pc.z() + cxy);
    return out;
}

} // namespace selfiekit
