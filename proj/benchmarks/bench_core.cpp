// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <benchmark/benchmark.h>

#include "selfiekit/camera.hpp"
#include "selfiekit/homography.hpp"
#include "selfiekit/renderer.hpp"
#include "selfiekit/segmap.hpp"
#include "selfiekit/semantic_map.hpp"
#include "selfiekit/volume.hpp"
#include "selfiekit/volumesh.hpp"

namespace {

using namespace selfiekit;

DensityVolume sphere_volume(int n) {
    DensityVolume v;
    v.dims = {n, n, n};
    v.origin = Eigen::Vector3d::Constant(-(n - 1) / 2.0);
    v.density.resize(v.node_count());
    v.color.assign(v.node_count() * 3, 0.8f);
    const double r = 0.35 * (n - 1);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double d = v.node_position(i, j, k).norm();
                v.density[v.node_index(i, j, k)] = static_cast<float>(r - d);
            }
    return v;
}

void bm_marching_cubes(benchmark::State& state) {
    const auto volume = sphere_volume(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto mesh = marching_cubes(volume, 0.0);
        benchmark::DoNotOptimize(mesh.vertices.data());
    }
}
BENCHMARK(bm_marching_cubes)->Arg(32)->Arg(64);

void bm_rasterize_phong(benchmark::State& state) {
    const auto volume = sphere_volume(48);
    const auto mesh = assign_nearest_colors(marching_cubes(volume, 0.0), volume);
    Camera camera;
    camera.distance_d = 100.0;
    camera.image_size = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto img = rasterize_phong(mesh, camera, PhongLighting{});
        benchmark::DoNotOptimize(img.rgb.data());
    }
}
BENCHMARK(bm_rasterize_phong)->Arg(256)->Arg(512);

void bm_estimate_homography(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(0.0, 512.0);
    const int n = static_cast<int>(state.range(0));
    std::vector<Eigen::Vector2d> src, dst;
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d p(coord(rng), coord(rng));
        src.push_back(p);
        dst.push_back(1.5 * p + Eigen::Vector2d(10.0, -4.0));
    }
    for (auto _ : state) {
        auto h = estimate_homography(src, dst);
        benchmark::DoNotOptimize(h.h.data());
    }
}
BENCHMARK(bm_estimate_homography)->Arg(4)->Arg(64);

void bm_dilate(benchmark::State& state) {
    Mask mask(512, 512);
    std::mt19937_64 rng(11);
    for (auto& b : mask.bits) b = (rng() % 100 == 0) ? 1 : 0;
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto out = dilate(mask, radius);
        benchmark::DoNotOptimize(out.bits.data());
    }
}
BENCHMARK(bm_dilate)->Arg(3)->Arg(21);

void bm_canny_from_semantic(benchmark::State& state) {
    SemanticMap map;
    map.width = map.height = 512;
    map.labels.resize(512 * 512);
    for (int id = 0; id < 4; ++id)
        map.taxonomy[id] = {"label" + std::to_string(id), LabelGroup::Other};
    for (int y = 0; y < 512; ++y)
        for (int x = 0; x < 512; ++x)
            map.labels[static_cast<std::size_t>(y) * 512 + x] =
                static_cast<std::uint8_t>((x / 128 + y / 128) % 4);
    for (auto _ : state) {
        auto edges = canny_from_semantic(map);
        benchmark::DoNotOptimize(edges.data.data());
    }
}
BENCHMARK(bm_canny_from_semantic);

} // namespace

BENCHMARK_MAIN();
