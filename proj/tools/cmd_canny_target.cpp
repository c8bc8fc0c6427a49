// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "common.hpp"
#include "selfiekit/png_io.hpp"
#include "selfiekit/segmap.hpp"

namespace selfiekit::cli {

int cmd_canny_target(const PipelineConfig& cfg) {
    if (cfg.input.empty() || !fs::exists(cfg.input)) {
        return usage_error("canny-target: paths.input must name an existing semantic map");
    }
    if (cfg.taxonomy.empty() || !fs::exists(cfg.taxonomy)) {
        return usage_error("canny-target: paths.taxonomy must name an existing file");
    }
    fs::create_directories(cfg.out);

    Manifest manifest;
    manifest.command = "canny-target";
    manifest.seed = cfg.rng_seed;

    const std::string name = cfg.input.stem().string() + "_edges.png";
    try {
        const SemanticMap map = read_semantic_map(cfg.input, cfg.taxonomy);
        const ImageU8 edges = canny_from_semantic(map, cfg.canny_low, cfg.canny_high);
        write_png(cfg.out / name, edges);
        ManifestEntry entry;
        entry.source = cfg.input.filename().string();
        entry.files = {name};
        entry.params = {{"low", cfg.canny_low}, {"high", cfg.canny_high}};
        manifest.entries.push_back(std::move(entry));
    } catch (const Error& e) {
        manifest.add_skip(cfg.input.filename().string(), e.what());
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace selfiekit::cli
