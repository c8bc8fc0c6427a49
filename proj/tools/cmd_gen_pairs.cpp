// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "common.hpp"
#include "selfiekit/errors.hpp"
#include "selfiekit/face_align.hpp"
#include "selfiekit/png_io.hpp"
#include "selfiekit/renderer.hpp"
#include "selfiekit/volumesh.hpp"

namespace selfiekit::cli {

namespace {

ImageU8 to_image(const RenderedImage& r) {
    ImageU8 img(r.width, r.height, 3);
    img.data = r.rgb;
    return img;
}

// Pixel-space face landmarks for one shot, from the 3D sidecar landmarks.
FaceLandmarks project_landmarks(const Camera& cam, const VolumeLandmarks& lm) {
    auto px = [&](const Eigen::Vector3d& p) {
        const Projection proj = project(cam, p);
        if (!proj.valid) throw DegenerateError("landmark behind the camera");
        return proj.pixel;
    };
    return {px(lm.eye_left), px(lm.eye_right), px(lm.mouth_avg)};
}

} // namespace

int cmd_gen_pairs(const PipelineConfig& cfg) {
    if (cfg.volumes.empty() || !fs::is_directory(cfg.volumes)) {
        return usage_error("gen-pairs: paths.volumes must name an existing directory");
    }
    const std::vector<fs::path> headers = list_files(cfg.volumes, ".json");
    if (headers.empty()) {
        return usage_error("gen-pairs: no volume headers (*.json) in " +
                           cfg.volumes.string());
    }
    fs::create_directories(cfg.out);

    Manifest manifest;
    manifest.command = "gen-pairs";
    manifest.seed = cfg.rng_seed;

    std::vector<ManifestEntry> results(headers.size());

    const auto errors = run_jobs(headers.size(), cfg.jobs, [&](std::size_t i) {
        const fs::path& header = headers[i];
        const std::string stem = header.stem().string();
        const VolumeFile vf = read_volume(header);

        TexturedMesh mesh = assign_nearest_colors(
            marching_cubes(vf.volume, cfg.iso), vf.volume);
        if (mesh.vertices.empty()) {
            throw NotFoundError("no surface crosses iso level " + std::to_string(cfg.iso));
        }

        // Frame the mesh: camera looks at its bounding-box centre.
        Eigen::Vector3d lo = mesh.vertices.front(), hi = lo;
        for (const auto& v : mesh.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        Camera base;
        base.focal_f0 = cfg.f0;
        base.image_size = cfg.resolution;
        base.subject_center = (lo + hi) / 2.0;

        const PhongLighting lighting;
        const DistanceSeries series = render_distance_series(
            mesh, base, lighting, cfg.distances, cfg.gt_distance);

        // Finish every shot before touching the disk, so a failed item
        // leaves no stray files behind.
        std::vector<std::pair<std::string, ImageU8>> shots;
        auto finish = [&](const RenderedImage& shot, double distance,
                          const std::string& name) {
            ImageU8 img = to_image(shot);
            if (vf.landmarks) {
                Camera cam = base;
                cam.distance_d = distance;
                img = align_face(img, project_landmarks(cam, *vf.landmarks),
                                 cfg.resolution);
            }
            shots.emplace_back(name, std::move(img));
        };
        for (std::size_t k = 0; k < series.inputs.size(); ++k) {
            finish(series.inputs[k], series.input_distances[k],
                   stem + "_input_" + std::to_string(k) + ".png");
        }
        finish(series.ground_truth, series.gt_distance, stem + "_gt.png");

        ManifestEntry entry;
        entry.source = header.filename().string();
        entry.params = {{"f0", cfg.f0},
                        {"distances", cfg.distances},
                        {"gt_distance", cfg.gt_distance},
                        {"resolution", cfg.resolution},
                        {"iso", cfg.iso},
                        {"aligned", vf.landmarks.has_value()}};
        for (auto& [name, img] : shots) {
            write_png(cfg.out / name, img);
            entry.files.push_back(name);
        }
        results[i] = std::move(entry);
    });

    for (std::size_t i = 0; i < headers.size(); ++i) {
        if (errors[i].empty()) {
            manifest.entries.push_back(std::move(results[i]));
        } else {
            manifest.add_skip(headers[i].filename().string(), errors[i]);
        }
    }
    manifest.write(cfg.out);
    return manifest.exit_code();
}

} // namespace selfiekit::cli
