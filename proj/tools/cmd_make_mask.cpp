// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "common.hpp"
#include "selfiekit/errors.hpp"
#include "selfiekit/segmap.hpp"

namespace selfiekit::cli {

int cmd_make_mask(const PipelineConfig& cfg) {
    if (cfg.input.empty() || !fs::exists(cfg.input)) {
        return usage_error("make-mask: paths.input must name an existing semantic map");
    }
    if (cfg.taxonomy.empty() || !fs::exists(cfg.taxonomy)) {
        return usage_error("make-mask: paths.taxonomy must name an existing file");
    }
    if (cfg.mask_mode != "bbox" && cfg.mask_mode != "foreground") {
        return usage_error("make-mask: mask_mode must be bbox or foreground");
    }
    fs::create_directories(cfg.out);

    Manifest manifest;
    manifest.command = "make-mask";
    manifest.seed = cfg.rng_seed;

    const std::string name = cfg.input.stem().string() + "_mask.png";
    try {
        const SemanticMap map = read_semantic_map(cfg.input, cfg.taxonomy);
        Mask mask;
        if (cfg.mask_mode == "bbox") {
            const BBox box = person_bbox(map);
            mask = scale_bbox_to_mask(box, cfg.bbox_factor, map.width, map.height);
        } else {
            // Foreground = person-group pixels, dilated for inpainting slack.
            Mask fg(map.width, map.height);
            for (int y = 0; y < map.height; ++y) {
                for (int x = 0; x < map.width; ++x) {
                    fg.at(x, y) =
                        map.taxonomy.at(map.label_at(x, y)).group != LabelGroup::Other;
                }
            }
            mask = dilate(fg, cfg.dilate_radius);
        }
        write_mask(cfg.out / name, mask);
        ManifestEntry entry;
        entry.source = cfg.input.filename().string();
        entry.files = {name};
        entry.params = {{"mode", cfg.mask_mode}};
        if (cfg.mask_mode == "bbox") {
            entry.params["bbox_factor"] = cfg.bbox_factor;
        } else {
            entry.params["dilate_radius"] = cfg.dilate_radius;
        }
        manifest.entries.push_back(std::move(entry));
    } catch (const Error& e) {
        manifest.add_skip(cfg.input.filename().string(), e.what());
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace selfiekit::cli
