// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/warp.hpp"

#include "selfiekit/errors.hpp"

namespace selfiekit {

ImageU8 warp_image(const ImageU8& image, const Homography& h, int out_width, int out_height,
                   Interp interp, const std::uint8_t fill[3]) {
    if (out_width < 1 || out_height < 1) {
        throw InvalidInputError("warp_image: output size must be positive");
    }
    const Homography hinv = h.inverse();
    ImageU8 out(out_width, out_height, image.channels);
    const std::uint8_t zero_fill[3] = {0, 0, 0};
    const std::uint8_t* fc = fill ? fill : zero_fill;
    std::uint8_t sample_out[3];
    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const Eigen::Vector2d src = hinv.apply(Eigen::Vector2d(x, y));
            sample(image, src.x(), src.y(), interp, fc, sample_out);
            for (int c = 0; c < image.channels; ++c) out.at(x, y, c) = sample_out[c];
        }
    }
    return out;
}

namespace {

struct Correspondences {
    std::vector<Eigen::Vector2d> detected;
    std::vector<Eigen::Vector2d> typical;
};

Correspondences shared_joints(const KeypointSet& detected, const KeypointSet& typical,
                              const std::vector<std::string>& joint_names) {
    Correspondences c;
    for (const auto& name : joint_names) {
        if (!detected.has(name) || !typical.has(name)) continue;
        const Keypoint& d = detected.keypoints.at(name);
        const Keypoint& t = typical.keypoints.at(name);
        c.detected.emplace_back(d.x, d.y);
        c.typical.emplace_back(t.x, t.y);
    }
    return c;
}

} // namespace

Homography selfie_homography(const KeypointSet& detected, const KeypointSet& typical,
                             BodyPart part, const std::vector<std::string>& joint_names) {
    const auto& names = joint_names.empty() ? part_joint_names(part) : joint_names;
    const Correspondences c = shared_joints(detected, typical, names);
    if (c.detected.size() < 4) {
        throw SimulationFailureError("selfie simulation: fewer than 4 usable " +
                                     std::string(to_string(part)) + " joints");
    }
    try {
        return estimate_homography(c.detected, c.typical);
    } catch (const DegenerateError& e) {
        throw SimulationFailureError(std::string("selfie simulation: ") + e.what());
    }
}

ImageU8 simulate_selfie(const ImageU8& fullbody_image, const KeypointSet& detected,
                        const KeypointSet& typical, BodyPart part, int out_size,
                        const std::vector<std::string>& joint_names) {
    if (out_size < 1) throw InvalidInputError("simulate_selfie: out_size must be >= 1");
    typical.validate();
    const Homography h = selfie_homography(detected, typical, part, joint_names);
    const ImageU8 canvas = warp_image(fullbody_image, h, typical.image_size, typical.image_size);
    if (canvas.width == out_size && canvas.height == out_size) return canvas;
    return resize(canvas, out_size, out_size);
}

KeypointSet typical_keypoints(const std::vector<KeypointSet>& examples) {
    if (examples.empty()) throw InvalidInputError("typical_keypoints: no examples");
    const int size = examples.front().image_size;
    for (const auto& ex : examples) {
        ex.validate();
        if (ex.image_size != size) {
            throw InvalidInputError("typical_keypoints: examples disagree on image_size");
        }
    }
    KeypointSet mean;
    mean.image_size = size;
    // std::map keeps joint iteration order deterministic.
    std::map<std::string, std::vector<const Keypoint*>> seen;
    for (const auto& ex : examples) {
        for (const auto& [name, kp] : ex.keypoints) {
            if (kp.confidence >= kConfidenceThreshold) seen[name].push_back(&kp);
        }
    }
    for (const auto& [name, kps] : seen) {
        Keypoint avg;
        avg.name = name;
        for (const Keypoint* kp : kps) {
            avg.x += kp->x;
            avg.y += kp->y;
            avg.confidence += kp->confidence;
        }
        const auto n = static_cast<double>(kps.size());
        avg.x /= n;
        avg.y /= n;
        avg.confidence /= n;
        mean.keypoints.emplace(name, avg);
    }
    return mean;
}

} // namespace selfiekit
