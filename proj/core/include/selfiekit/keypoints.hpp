// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace selfiekit {

/// Joints a keypoint must reach to count as detected; below this a joint is
/// treated as missing.
inline constexpr double kConfidenceThreshold = 0.3;

struct Keypoint {
    std::string name;
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;
};

/// Named 2D body joints on a square canvas of image_size pixels.
struct KeypointSet {
    int image_size = 0;
    std::map<std::string, Keypoint> keypoints;

    bool has(const std::string& name, double min_confidence = kConfidenceThreshold) const {
        auto it = keypoints.find(name);
        return it != keypoints.end() && it->second.confidence >= min_confidence;
    }

    /// Throws InvalidInputError on confidence outside [0,1] or a map entry
    /// whose key disagrees with the keypoint's own name.
    void validate() const;
};

/// The 25-joint OpenPose body convention, in model output order.
const std::vector<std::string>& body25_names();

enum class BodyPart { Upper, Lower, Shoes };

const char* to_string(BodyPart part);
BodyPart body_part_from_string(const std::string& s);

/// Default joint subset anchoring each part's selfie simulation
/// (upper: neck/shoulders/elbows/hips; lower: hips/knees/ankles;
/// shoes: ankles/toes/heels).
const std::vector<std::string>& part_joint_names(BodyPart part);

/// JSON: {image_size, keypoints: [{name, x, y, confidence}]}.
KeypointSet read_keypoints(const std::filesystem::path& path);
void write_keypoints(const std::filesystem::path& path, const KeypointSet& set);

} // namespace selfiekit
