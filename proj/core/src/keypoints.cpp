// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/keypoints.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "selfiekit/errors.hpp"

namespace selfiekit {

void KeypointSet::validate() const {
    if (image_size < 1) throw InvalidInputError("keypoints: image_size must be >= 1");
    for (const auto& [name, kp] : keypoints) {
        if (name != kp.name) throw InvalidInputError("keypoints: map key does not match joint name");
        if (!(kp.confidence >= 0.0 && kp.confidence <= 1.0)) {
            throw InvalidInputError("keypoints: confidence outside [0,1] for " + name);
        }
    }
}

const std::vector<std::string>& body25_names() {
    static const std::vector<std::string> names = {
        "Nose",      "Neck",      "RShoulder", "RElbow",   "RWrist",
        "LShoulder", "LElbow",    "LWrist",    "MidHip",   "RHip",
        "RKnee",     "RAnkle",    "LHip",      "LKnee",    "LAnkle",
        "REye",      "LEye",      "REar",      "LEar",     "LBigToe",
        "LSmallToe", "LHeel",     "RBigToe",   "RSmallToe", "RHeel",
    };
    return names;
}

const char* to_string(BodyPart part) {
    switch (part) {
        case BodyPart::Upper: return "upper";
        case BodyPart::Lower: return "lower";
        case BodyPart::Shoes: return "shoes";
    }
    throw InvalidInputError("unknown body part");
}

BodyPart body_part_from_string(const std::string& s) {
    if (s == "upper") return BodyPart::Upper;
    if (s == "lower") return BodyPart::Lower;
    if (s == "shoes") return BodyPart::Shoes;
    throw InvalidInputError("unknown body part: " + s);
}

const std::vector<std::string>& part_joint_names(BodyPart part) {
    static const std::vector<std::string> upper = {
        "Neck", "RShoulder", "LShoulder", "RElbow", "LElbow", "MidHip", "RHip", "LHip",
    };
    static const std::vector<std::string> lower = {
        "MidHip", "RHip", "LHip", "RKnee", "LKnee", "RAnkle", "LAnkle",
    };
    static const std::vector<std::string> shoes = {
        "RAnkle", "LAnkle", "RBigToe", "LBigToe", "RSmallToe", "LSmallToe", "RHeel", "LHeel",
    };
    switch (part) {
        case BodyPart::Upper: return upper;
        case BodyPart::Lower: return lower;
        case BodyPart::Shoes: return shoes;
    }
    throw InvalidInputError("unknown body part");
}

KeypointSet read_keypoints(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad keypoint JSON " + path.string() + ": " + e.what());
    }
    KeypointSet set;
    try {
        set.image_size = j.at("image_size").get<int>();
        for (const auto& jk : j.at("keypoints")) {
            Keypoint kp;
            kp.name = jk.at("name").get<std::string>();
            kp.x = jk.at("x").get<double>();
            kp.y = jk.at("y").get<double>();
            kp.confidence = jk.at("confidence").get<double>();
            if (!set.keypoints.emplace(kp.name, kp).second) {
                throw InvalidInputError("keypoints: duplicate joint " + kp.name + " in " +
                                        path.string());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad keypoint JSON " + path.string() + ": " + e.what());
    }
    set.validate();
    return set;
}

void write_keypoints(const std::filesystem::path& path, const KeypointSet& set) {
    set.validate();
    nlohmann::json jk = nlohmann::json::array();
    for (const auto& [name, kp] : set.keypoints) {
        jk.push_back({{"name", name}, {"x", kp.x}, {"y", kp.y}, {"confidence", kp.confidence}});
    }
    nlohmann::json j{{"image_size", set.image_size}, {"keypoints", jk}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace selfiekit
