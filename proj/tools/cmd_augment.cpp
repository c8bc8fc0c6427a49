// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>

#include "common.hpp"
#include "selfiekit/augment.hpp"
#include "selfiekit/errors.hpp"
#include "selfiekit/png_io.hpp"
#include "selfiekit/rng.hpp"
#include "selfiekit/semantic_map.hpp"

namespace selfiekit::cli {

namespace {

std::string numbered(const char* prefix, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%03d.png", prefix, i);
    return buf;
}

BBox bbox_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw InvalidInputError("part box must be a [x0, y0, x1, y1] array");
    }
    BBox box{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    box.validate();
    return box;
}

int run_finetune(const PipelineConfig& cfg) {
    if (cfg.pool.empty() || !fs::is_directory(cfg.pool)) {
        return usage_error("augment: paths.pool must name an existing directory");
    }
    if (cfg.selfies.empty() || !fs::is_directory(cfg.selfies)) {
        return usage_error("augment: paths.selfies must name an existing directory");
    }

    // Pool candidates: <stem>.png with <stem>_mask.png and <stem>_boxes.json.
    std::vector<PoolCandidate> pool;
    std::vector<std::string> pool_names;
    for (const auto& path : list_files(cfg.pool, ".png")) {
        const std::string stem = path.stem().string();
        if (stem.size() > 5 && stem.ends_with("_mask")) continue;
        const fs::path mask_path = cfg.pool / (stem + "_mask.png");
        const fs::path boxes_path = cfg.pool / (stem + "_boxes.json");
        if (!fs::exists(mask_path) || !fs::exists(boxes_path)) {
            return usage_error("augment: candidate " + path.filename().string() +
                               " lacks its _mask.png or _boxes.json sidecar");
        }
        PoolCandidate cand;
        cand.background = read_png(path);
        cand.inpaint_mask = read_mask(mask_path);
        std::ifstream in(boxes_path);
        nlohmann::json boxes;
        try {
            in >> boxes;
            for (const auto& [part_name, box] : boxes.items()) {
                cand.part_boxes[selfie_part_from_string(part_name)] = bbox_from_json(box);
            }
        } catch (const nlohmann::json::exception& e) {
            throw IoError("bad boxes JSON " + boxes_path.string() + ": " + e.what());
        }
        pool.push_back(std::move(cand));
        pool_names.push_back(path.filename().string());
    }
    if (pool.empty()) {
        return usage_error("augment: no pool candidates in " + cfg.pool.string());
    }

    std::map<SelfiePart, ImageU8> selfies;
    for (SelfiePart part : {SelfiePart::Face, SelfiePart::Upper, SelfiePart::Lower,
                            SelfiePart::Shoes}) {
        const fs::path path = cfg.selfies / (std::string(to_string(part)) + ".png");
        if (fs::exists(path)) selfies[part] = read_png(path);
    }
    if (selfies.empty()) {
        return usage_error("augment: no selfie images (face/upper/lower/shoes .png) in " +
                           cfg.selfies.string());
    }

    AugmentPlan plan;
    plan.pool_size = static_cast<int>(pool.size());
    plan.num_outputs = cfg.num_outputs;
    plan.rng_seed = cfg.rng_seed;

    FinetuneSet set;
    try {
        set = build_finetune_set(pool, selfies, plan);
    } catch (const Error& e) {
        return usage_error(std::string("augment: ") + e.what());
    }

    fs::create_directories(cfg.out);
    Manifest manifest;
    manifest.command = "augment";
    manifest.seed = cfg.rng_seed;
    for (std::size_t i = 0; i < set.images.size(); ++i) {
        const std::string name = numbered("finetune", static_cast<int>(i));
        write_png(cfg.out / name, set.images[i]);
        ManifestEntry entry;
        entry.source = pool_names[set.manifest[i].candidate_index];
        entry.files = {name};
        entry.params = {{"candidate_index", set.manifest[i].candidate_index},
                        {"source_part", to_string(set.manifest[i].part)}};
        manifest.entries.push_back(std::move(entry));
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

int run_dreambooth(const PipelineConfig& cfg) {
    if (cfg.input.empty() || !fs::exists(cfg.input)) {
        return usage_error("augment: paths.input must name an existing image");
    }
    if (cfg.part != "face" && cfg.part != "shoes") {
        return usage_error("augment: dreambooth part must be face or shoes");
    }
    const bool face = cfg.part == "face";
    const int min_res = cfg.db_min_res > 0 ? cfg.db_min_res : (face ? 350 : 400);
    const int max_res = cfg.db_max_res > 0 ? cfg.db_max_res : (face ? 450 : 500);

    const ImageU8 source = read_png(cfg.input);
    std::vector<ImageU8> outputs;
    try {
        outputs = dreambooth_pad_augment(source, min_res, max_res, cfg.out_res,
                                         cfg.db_count, cfg.rng_seed, cfg.center_crop);
    } catch (const Error& e) {
        return usage_error(std::string("augment: ") + e.what());
    }

    fs::create_directories(cfg.out);
    Manifest manifest;
    manifest.command = "augment";
    manifest.seed = cfg.rng_seed;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const std::string name = numbered("dreambooth", static_cast<int>(i));
        write_png(cfg.out / name, outputs[i]);
        // Replay the item stream (r, then x, then y) to record the draw.
        auto rng = item_rng(cfg.rng_seed, i);
        const int r = static_cast<int>(draw_range(rng, min_res, max_res));
        const int ox = static_cast<int>(draw_range(rng, 0, cfg.out_res - r));
        const int oy = static_cast<int>(draw_range(rng, 0, cfg.out_res - r));
        ManifestEntry entry;
        entry.source = cfg.input.filename().string();
        entry.files = {name};
        entry.params = {{"source_part", cfg.part},
                        {"resolution", r},
                        {"offset", {ox, oy}}};
        manifest.entries.push_back(std::move(entry));
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace

int cmd_augment(const PipelineConfig& cfg) {
    if (cfg.mode == "finetune") return run_finetune(cfg);
    if (cfg.mode == "dreambooth") return run_dreambooth(cfg);
    return usage_error("augment: mode must be finetune or dreambooth");
}

} // namespace selfiekit::cli
