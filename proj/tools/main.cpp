// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "common.hpp"
#include "selfiekit/errors.hpp"

using namespace selfiekit::cli;

namespace {

// Shared flags every subcommand understands. --config is consumed in a
// pre-pass (so command-line flags override file values); here it is only
// registered so the parser accepts it.
void add_shared(CLI::App* sub, PipelineConfig& cfg, std::string& config_path) {
    sub->add_option("--config", config_path, "JSON config file (flags override it)");
    sub->add_option("--seed", cfg.rng_seed, "RNG seed for all randomized steps");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output directory");
}

} // namespace

int main(int argc, char** argv) {
    PipelineConfig cfg;

    // Pre-pass: load --config before binding flags, so flags win.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            config_path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        }
    }
    if (!config_path.empty()) {
        try {
            load_config_file(config_path, cfg);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    CLI::App app{"Deterministic dataset tooling for selfie undistortion and "
                 "reference-guided inpainting pipelines"};
    app.require_subcommand(1);

    CLI::App* gen = app.add_subcommand(
        "gen-pairs", "Render distance-ladder face pairs from density volumes");
    add_shared(gen, cfg, config_path);
    gen->add_option("--volumes", cfg.volumes, "directory of volume headers (*.json)");
    gen->add_option("--f0", cfg.f0, "base focal length; f = d * f0");
    gen->add_option("--distances", cfg.distances, "input camera distances");
    gen->add_option("--gt-distance", cfg.gt_distance, "ground-truth camera distance");
    gen->add_option("--resolution", cfg.resolution, "render/crop size in pixels");
    gen->add_option("--iso", cfg.iso, "marching-cubes iso level");

    CLI::App* sim = app.add_subcommand(
        "simulate-selfies", "Cut close-up part selfies out of full-body photos");
    add_shared(sim, cfg, config_path);
    sim->add_option("--images", cfg.images, "directory of full-body PNGs");
    sim->add_option("--keypoints", cfg.keypoints, "directory of per-image keypoint JSONs");
    sim->add_option("--typical", cfg.typical,
                    "directory of typical keypoints (upper/lower/shoes.json)");
    sim->add_option("--resolution", cfg.resolution, "output crop size in pixels");

    CLI::App* rank = app.add_subcommand(
        "rank-poses", "Rank reference photos by matched clothing labels");
    add_shared(rank, cfg, config_path);
    rank->add_option("--selfie-maps", cfg.selfie_maps,
                     "directory of selfie semantic maps (upper/lower/shoes.png)");
    rank->add_option("--collection", cfg.collection, "directory of candidate maps");
    rank->add_option("--taxonomy", cfg.taxonomy, "label taxonomy JSON");
    rank->add_option("--min-pixels", cfg.selfie_min_pixels, "selfie label threshold");
    rank->add_option("--ref-min-pixels", cfg.reference_min_pixels,
                     "reference label threshold");
    rank->add_option("--bbox-factor", cfg.bbox_factor, "person-box scale for the top mask");

    CLI::App* canny = app.add_subcommand(
        "canny-target", "Edge image of a semantic map's label boundaries");
    add_shared(canny, cfg, config_path);
    canny->add_option("--input", cfg.input, "semantic map PNG");
    canny->add_option("--taxonomy", cfg.taxonomy, "label taxonomy JSON");
    canny->add_option("--low", cfg.canny_low, "hysteresis low threshold");
    canny->add_option("--high", cfg.canny_high, "hysteresis high threshold");

    CLI::App* mask = app.add_subcommand(
        "make-mask", "Inpainting mask from a semantic map");
    add_shared(mask, cfg, config_path);
    mask->add_option("--input", cfg.input, "semantic map PNG");
    mask->add_option("--taxonomy", cfg.taxonomy, "label taxonomy JSON");
    mask->add_option("--mode", cfg.mask_mode, "bbox | foreground");
    mask->add_option("--bbox-factor", cfg.bbox_factor, "person-box scale (bbox mode)");
    mask->add_option("--dilate", cfg.dilate_radius, "dilation radius (foreground mode)");

    CLI::App* aug = app.add_subcommand(
        "augment", "Fine-tune composites or dreambooth pad sets");
    add_shared(aug, cfg, config_path);
    aug->add_option("--mode", cfg.mode, "finetune | dreambooth");
    aug->add_option("--pool", cfg.pool, "candidate pool directory (finetune)");
    aug->add_option("--selfies", cfg.selfies, "selfie part images directory (finetune)");
    aug->add_option("--num-outputs", cfg.num_outputs, "fine-tune composites to draw");
    aug->add_option("--input", cfg.input, "source image (dreambooth)");
    aug->add_option("--part", cfg.part, "dreambooth part: face | shoes");
    aug->add_option("--count", cfg.db_count, "dreambooth outputs to draw");
    aug->add_option("--min-res", cfg.db_min_res, "dreambooth resize lower bound");
    aug->add_option("--max-res", cfg.db_max_res, "dreambooth resize upper bound");
    aug->add_option("--out-res", cfg.out_res, "dreambooth canvas resolution");
    aug->add_flag("--center-crop,!--no-center-crop", cfg.center_crop,
                  "square-crop the source before resizing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(gen)) return cmd_gen_pairs(cfg);
        if (app.got_subcommand(sim)) return cmd_simulate_selfies(cfg);
        if (app.got_subcommand(rank)) return cmd_rank_poses(cfg);
        if (app.got_subcommand(canny)) return cmd_canny_target(cfg);
        if (app.got_subcommand(mask)) return cmd_make_mask(cfg);
        if (app.got_subcommand(aug)) return cmd_augment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
