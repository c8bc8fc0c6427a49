// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include <mutex>

#include "common.hpp"
#include "selfiekit/errors.hpp"
#include "selfiekit/face_align.hpp"
#include "selfiekit/png_io.hpp"
#include "selfiekit/warp.hpp"

namespace selfiekit::cli {

namespace {

// FFHQ alignment wants eye/mouth points. OpenPose BODY_25 has the eyes but
// no mouth joint, so files may carry an extra "MouthAvg" entry; the nose is
// the fallback. eye_left is the image-left eye, which on a camera-facing
// person is the subject's right eye ("REye").
FaceLandmarks face_landmarks(const KeypointSet& kp) {
    const char* mouth = kp.has("MouthAvg") ? "MouthAvg" : "Nose";
    for (const char* name : {"REye", "LEye", mouth}) {
        if (!kp.has(name)) {
            throw NotFoundError(std::string("joint ") + name +
                                " missing or below confidence");
        }
    }
    auto at = [&](const char* name) {
        const Keypoint& k = kp.keypoints.at(name);
        return Eigen::Vector2d(k.x, k.y);
    };
    return {at("REye"), at("LEye"), at(mouth)};
}

} // namespace

int cmd_simulate_selfies(const PipelineConfig& cfg) {
    if (cfg.images.empty() || !fs::is_directory(cfg.images)) {
        return usage_error("simulate-selfies: paths.images must name an existing directory");
    }
    if (cfg.keypoints.empty() || !fs::is_directory(cfg.keypoints)) {
        return usage_error(
            "simulate-selfies: paths.keypoints must name an existing directory");
    }
    // The typical keypoints are the anchor of the whole simulation; their
    // absence is a configuration error, not a per-item skip.
    std::map<BodyPart, KeypointSet> typical;
    for (BodyPart part : {BodyPart::Upper, BodyPart::Lower, BodyPart::Shoes}) {
        const fs::path path = cfg.typical / (std::string(to_string(part)) + ".json");
        if (!fs::exists(path)) {
            return usage_error("simulate-selfies: missing typical keypoints " +
                               path.string());
        }
        typical[part] = read_keypoints(path);
    }
    const std::vector<fs::path> images = list_files(cfg.images, ".png");
    if (images.empty()) {
        return usage_error("simulate-selfies: no images (*.png) in " + cfg.images.string());
    }
    fs::create_directories(cfg.out);

    Manifest manifest;
    manifest.command = "simulate-selfies";
    manifest.seed = cfg.rng_seed;

    std::vector<ManifestEntry> results(images.size());
    std::vector<std::vector<SkipRecord>> part_skips(images.size());

    const auto errors = run_jobs(images.size(), cfg.jobs, [&](std::size_t i) {
        const std::string stem = images[i].stem().string();
        const ImageU8 img = read_png(images[i]);
        const KeypointSet kp = read_keypoints(cfg.keypoints / (stem + ".json"));

        std::vector<std::pair<std::string, ImageU8>> crops;
        auto attempt = [&](const std::string& part_name, auto&& make) {
            try {
                crops.emplace_back(stem + "_" + part_name + ".png", make());
            } catch (const Error& e) {
                part_skips[i].push_back({stem + ":" + part_name, e.what()});
            }
        };
        attempt("face", [&] { return align_face(img, face_landmarks(kp), cfg.resolution); });
        for (BodyPart part : {BodyPart::Upper, BodyPart::Lower, BodyPart::Shoes}) {
            attempt(to_string(part), [&] {
                return simulate_selfie(img, kp, typical.at(part), part, cfg.resolution);
            });
        }

        ManifestEntry entry;
        entry.source = images[i].filename().string();
        entry.params = {{"resolution", cfg.resolution}};
        for (auto& [name, crop] : crops) {
            write_png(cfg.out / name, crop);
            entry.files.push_back(name);
        }
        results[i] = std::move(entry);
    });

    for (std::size_t i = 0; i < images.size(); ++i) {
        if (errors[i].empty()) {
            manifest.entries.push_back(std::move(results[i]));
            for (const auto& skip : part_skips[i]) manifest.add_skip(skip.source, skip.reason);
        } else {
            manifest.add_skip(images[i].filename().string(), errors[i]);
        }
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace selfiekit::cli
