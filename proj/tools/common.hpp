// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace selfiekit::cli {

namespace fs = std::filesystem;

/// Every knob the batch commands read, preloaded with the pipeline defaults.
/// Values load from a JSON config file first; command-line flags win.
struct PipelineConfig {
    // paths
    fs::path volumes;       // directory of volume headers (*.json + *.raw)
    fs::path images;        // directory of full-body PNGs
    fs::path keypoints;     // directory of per-image keypoint JSONs
    fs::path typical;       // directory of typical-keypoint JSONs (upper/lower/shoes)
    fs::path selfie_maps;   // directory of selfie semantic maps (upper/lower/shoes PNGs)
    fs::path collection;    // directory of candidate reference semantic maps
    fs::path taxonomy;      // label taxonomy JSON shared by all semantic maps
    fs::path pool;          // fine-tune candidate pool directory
    fs::path selfies;       // selfie part images for fine-tune composites
    fs::path input;         // single input file (semantic map or image)
    fs::path out = "out";   // output directory

    // rendering
    double f0 = 2.9;
    std::vector<double> distances = {1.0, 1.3, 1.6, 1.9};
    double gt_distance = 10.0;
    int resolution = 512;
    double iso = 0.5;

    // thresholds
    int selfie_min_pixels = 21;
    int reference_min_pixels = 5;
    double bbox_factor = 1.1;
    int dilate_radius = 21;
    double blend_s = 0.4;
    int total_steps = 50;

    // canny
    double canny_low = 50.0;
    double canny_high = 150.0;

    // augmentation
    std::string mode = "finetune"; // augment: finetune | dreambooth
    std::string part = "face";     // dreambooth source part: face | shoes
    std::string mask_mode = "bbox"; // make-mask: bbox | foreground
    int num_outputs = 200;
    int db_count = 50;
    int db_min_res = 0; // 0 = pick the part default (face 350, shoes 400)
    int db_max_res = 0; // 0 = pick the part default (face 450, shoes 500)
    int out_res = 512;
    bool center_crop = true;

    // shared
    std::uint64_t rng_seed = 0;
    int jobs = 1;
};

/// Merges a JSON config file into `cfg`. Unknown keys are errors so typos
/// cannot silently fall back to defaults.
void load_config_file(const fs::path& path, PipelineConfig& cfg);

/// A finished work item: its source, the files it produced (relative to the
/// output directory), and the parameters that shaped it.
struct ManifestEntry {
    std::string source;
    std::vector<std::string> files;
    nlohmann::json params = nlohmann::json::object();
};

struct SkipRecord {
    std::string source;
    std::string reason;
};

/// Run log for one command; written as manifest.json in the output
/// directory. Entries stay in input order regardless of worker scheduling.
struct Manifest {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
    std::vector<SkipRecord> skipped;

    void add_skip(const std::string& source, const std::string& reason);

    /// Writes manifest.json; throws IoError if a listed file is missing so
    /// an incomplete tree can never pass silently.
    void write(const fs::path& out_dir) const;

    /// 0 on a clean run, 2 when skips occurred.
    int exit_code() const { return skipped.empty() ? 0 : 2; }
};

/// Runs fn(0..n-1) on up to `jobs` threads. Returns one string per item:
/// empty on success, the error message when the item threw. Item order in
/// the result matches input order.
std::vector<std::string> run_jobs(std::size_t n, int jobs,
                                  const std::function<void(std::size_t)>& fn);

/// Sorted regular files under dir with the given extension (e.g. ".png").
std::vector<fs::path> list_files(const fs::path& dir, const std::string& extension);

/// Prints a config/usage error and returns exit code 1.
int usage_error(const std::string& message);

int cmd_gen_pairs(const PipelineConfig& cfg);
int cmd_simulate_selfies(const PipelineConfig& cfg);
int cmd_rank_poses(const PipelineConfig& cfg);
int cmd_canny_target(const PipelineConfig& cfg);
int cmd_make_mask(const PipelineConfig& cfg);
int cmd_augment(const PipelineConfig& cfg);

} // namespace selfiekit::cli
