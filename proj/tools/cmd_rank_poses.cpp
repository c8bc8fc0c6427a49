// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "common.hpp"
#include "selfiekit/errors.hpp"
#include "selfiekit/segmap.hpp"

namespace selfiekit::cli {

int cmd_rank_poses(const PipelineConfig& cfg) {
    if (cfg.taxonomy.empty() || !fs::exists(cfg.taxonomy)) {
        return usage_error("rank-poses: paths.taxonomy must name an existing file");
    }
    if (cfg.selfie_maps.empty() || !fs::is_directory(cfg.selfie_maps)) {
        return usage_error("rank-poses: paths.selfie_maps must name an existing directory");
    }
    if (cfg.collection.empty() || !fs::is_directory(cfg.collection)) {
        return usage_error("rank-poses: paths.collection must name an existing directory");
    }
    fs::create_directories(cfg.out);

    Manifest manifest;
    manifest.command = "rank-poses";
    manifest.seed = cfg.rng_seed;

    // Selfie label sets; a part whose map is absent contributes nothing.
    auto selfie_labels = [&](const char* name) {
        const fs::path path = cfg.selfie_maps / (std::string(name) + ".png");
        if (!fs::exists(path)) return LabelSet{};
        return extract_label_set(read_semantic_map(path, cfg.taxonomy),
                                 cfg.selfie_min_pixels);
    };
    const LabelSet p_u = selfie_labels("upper");
    const LabelSet p_l = selfie_labels("lower");
    const LabelSet p_s = selfie_labels("shoes");

    const std::vector<fs::path> candidates = list_files(cfg.collection, ".png");
    std::vector<SemanticMap> collection;
    collection.reserve(candidates.size());
    for (const auto& path : candidates) {
        collection.push_back(read_semantic_map(path, cfg.taxonomy));
    }

    const std::vector<RankedPhoto> ranked =
        rank_collection(p_u, p_l, p_s, collection, cfg.reference_min_pixels);

    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : ranked) {
        out.push_back({{"index", r.index},
                       {"path", candidates[r.index].filename().string()},
                       {"score", r.score}});
    }
    {
        std::ofstream f(cfg.out / "ranked.json");
        if (!f) throw IoError("cannot open for writing: " + (cfg.out / "ranked.json").string());
        f << out.dump(2) << '\n';
    }
    ManifestEntry entry;
    entry.source = cfg.collection.string();
    entry.files = {"ranked.json"};
    entry.params = {{"selfie_min_pixels", cfg.selfie_min_pixels},
                    {"reference_min_pixels", cfg.reference_min_pixels}};

    // The top candidate also gets its inpainting region: the person box
    // scaled by the configured factor.
    if (!ranked.empty()) {
        const SemanticMap& top = collection[ranked.front().index];
        try {
            const BBox box = person_bbox(top);
            const Mask mask = scale_bbox_to_mask(box, cfg.bbox_factor, top.width, top.height);
            write_mask(cfg.out / "top_mask.png", mask);
            entry.files.push_back("top_mask.png");
            entry.params["top"] = candidates[ranked.front().index].filename().string();
            entry.params["bbox_factor"] = cfg.bbox_factor;
        } catch (const NotFoundError& e) {
            manifest.add_skip(candidates[ranked.front().index].filename().string(), e.what());
        }
    }
    manifest.entries.push_back(std::move(entry));
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace selfiekit::cli
