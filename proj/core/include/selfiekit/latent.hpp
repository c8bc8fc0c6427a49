// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

namespace selfiekit {

/// Latent-space tensor (channels × height × width, channel-major). Values
/// are kept as doubles in memory so elementwise arithmetic stays exact to
/// machine precision; files store 32-bit floats.
struct LatentGrid {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> values;

    LatentGrid() = default;
    LatentGrid(int c, int h, int w)
        : channels(c), height(h), width(w),
          values(static_cast<std::size_t>(c) * h * w, 0.0) {}

    double& at(int c, int y, int x) {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    bool same_shape(const LatentGrid& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }

    void validate() const; // InvalidInputError on shape/buffer mismatch or non-finite values
};

/// Noising weights α_t indexed by timestep, non-increasing from ~1 at t = 0
/// to ~0 at t = total_steps.
struct NoiseSchedule {
    int total_steps = 0;          // T
    std::vector<double> alpha;    // T+1 entries, alpha[t] ∈ [0,1]

    void validate() const;

    /// Convenience linear ramp α_t = 1 − t/T.
    static NoiseSchedule linear(int total_steps);
};

/// Raw little-endian f32 with a JSON header {channels, height, width};
/// the raw file sits next to the header with extension ".raw".
LatentGrid read_latent(const std::filesystem::path& header_path);
void write_latent(const std::filesystem::path& header_path, const LatentGrid& grid);

/// Schedule file: JSON array of α_t values (T inferred from length).
NoiseSchedule read_schedule(const std::filesystem::path& path);
void write_schedule(const std::filesystem::path& path, const NoiseSchedule& schedule);

} // namespace selfiekit
