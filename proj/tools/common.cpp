// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "common.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "selfiekit/errors.hpp"

namespace selfiekit::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end()) {
            throw InvalidInputError("config: unknown key \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
void maybe(const json& obj, const char* key, T& into) {
    if (obj.contains(key)) into = obj.at(key).get<T>();
}

void maybe_path(const json& obj, const char* key, fs::path& into) {
    if (obj.contains(key)) into = fs::path(obj.at(key).get<std::string>());
}

} // namespace

void load_config_file(const fs::path& path, PipelineConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("bad config JSON " + path.string() + ": " + e.what());
    }
    try {
        reject_unknown(j, {"paths", "render", "thresholds", "canny", "augment",
                           "rng_seed", "jobs"}, "config root");
        if (j.contains("paths")) {
            const json& p = j.at("paths");
            reject_unknown(p, {"volumes", "images", "keypoints", "typical", "selfie_maps",
                               "collection", "taxonomy", "pool", "selfies", "input", "out"},
                           "paths");
            maybe_path(p, "volumes", cfg.volumes);
            maybe_path(p, "images", cfg.images);
            maybe_path(p, "keypoints", cfg.keypoints);
            maybe_path(p, "typical", cfg.typical);
            maybe_path(p, "selfie_maps", cfg.selfie_maps);
            maybe_path(p, "collection", cfg.collection);
            maybe_path(p, "taxonomy", cfg.taxonomy);
            maybe_path(p, "pool", cfg.pool);
            maybe_path(p, "selfies", cfg.selfies);
            maybe_path(p, "input", cfg.input);
            maybe_path(p, "out", cfg.out);
        }
        if (j.contains("render")) {
            const json& r = j.at("render");
            reject_unknown(r, {"f0", "distances", "gt_distance", "resolution", "iso"},
                           "render");
            maybe(r, "f0", cfg.f0);
            maybe(r, "distances", cfg.distances);
            maybe(r, "gt_distance", cfg.gt_distance);
            maybe(r, "resolution", cfg.resolution);
            maybe(r, "iso", cfg.iso);
        }
        if (j.contains("thresholds")) {
            const json& t = j.at("thresholds");
            reject_unknown(t, {"selfie_min_pixels", "reference_min_pixels", "bbox_factor",
                               "dilate_radius", "s", "total_steps"}, "thresholds");
            maybe(t, "selfie_min_pixels", cfg.selfie_min_pixels);
            maybe(t, "reference_min_pixels", cfg.reference_min_pixels);
            maybe(t, "bbox_factor", cfg.bbox_factor);
            maybe(t, "dilate_radius", cfg.dilate_radius);
            maybe(t, "s", cfg.blend_s);
            maybe(t, "total_steps", cfg.total_steps);
        }
        if (j.contains("canny")) {
            const json& c = j.at("canny");
            reject_unknown(c, {"low", "high"}, "canny");
            maybe(c, "low", cfg.canny_low);
            maybe(c, "high", cfg.canny_high);
        }
        if (j.contains("augment")) {
            const json& a = j.at("augment");
            reject_unknown(a, {"mode", "part", "mask_mode", "num_outputs", "db_count",
                               "db_min_res", "db_max_res", "out_res", "center_crop"},
                           "augment");
            maybe(a, "mode", cfg.mode);
            maybe(a, "part", cfg.part);
            maybe(a, "mask_mode", cfg.mask_mode);
            maybe(a, "num_outputs", cfg.num_outputs);
            maybe(a, "db_count", cfg.db_count);
            maybe(a, "db_min_res", cfg.db_min_res);
            maybe(a, "db_max_res", cfg.db_max_res);
            maybe(a, "out_res", cfg.out_res);
            maybe(a, "center_crop", cfg.center_crop);
        }
        maybe(j, "rng_seed", cfg.rng_seed);
        maybe(j, "jobs", cfg.jobs);
    } catch (const json::exception& e) {
        throw IoError("bad config value in " + path.string() + ": " + e.what());
    }
}

void Manifest::add_skip(const std::string& source, const std::string& reason) {
    std::cerr << "skip " << source << ": " << reason << "\n";
    skipped.push_back({source, reason});
}

void Manifest::write(const fs::path& out_dir) const {
    nlohmann::json j;
    j["command"] = command;
    j["seed"] = seed;
    j["entries"] = nlohmann::json::array();
    std::size_t file_count = 0;
    for (const auto& e : entries) {
        for (const auto& f : e.files) {
            if (!fs::exists(out_dir / f)) {
                throw IoError("manifest lists missing file: " + (out_dir / f).string());
            }
        }
        file_count += e.files.size();
        j["entries"].push_back({{"source", e.source}, {"files", e.files},
                                {"params", e.params}});
    }
    j["skipped"] = nlohmann::json::array();
    for (const auto& s : skipped) {
        j["skipped"].push_back({{"source", s.source}, {"reason", s.reason}});
    }
    j["counts"] = {{"entries", entries.size()},
                   {"files", file_count},
                   {"skipped", skipped.size()}};
    const fs::path path = out_dir / "manifest.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::string> run_jobs(std::size_t n, int jobs,
                                  const std::function<void(std::size_t)>& fn) {
    std::vector<std::string> errors(n);
    if (n == 0) return errors;
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            } catch (...) {
                errors[i] = "unknown error";
            }
        }
    };
    if (workers == 1) {
        worker();
        return errors;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return errors;
}

std::vector<fs::path> list_files(const fs::path& dir, const std::string& extension) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 1;
}

} // namespace selfiekit::cli
