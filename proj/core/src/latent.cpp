// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/latent.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "selfiekit/errors.hpp"

namespace selfiekit {

void LatentGrid::validate() const {
    if (channels < 1 || height < 1 || width < 1) {
        throw InvalidInputError("latent: dimensions must be positive");
    }
    if (values.size() != static_cast<std::size_t>(channels) * height * width) {
        throw InvalidInputError("latent: buffer does not match dimensions");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidInputError("latent: non-finite value");
    }
}

void NoiseSchedule::validate() const {
    if (total_steps < 1) throw InvalidInputError("schedule: total_steps must be >= 1");
    if (alpha.size() != static_cast<std::size_t>(total_steps) + 1) {
        throw InvalidInputError("schedule: alpha must have total_steps + 1 entries");
    }
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        if (!(alpha[t] >= 0.0 && alpha[t] <= 1.0)) {
            throw InvalidInputError("schedule: alpha outside [0,1]");
        }
        if (t > 0 && alpha[t] > alpha[t - 1]) {
            throw InvalidInputError("schedule: alpha must be non-increasing");
        }
    }
}

NoiseSchedule NoiseSchedule::linear(int total_steps) {
    NoiseSchedule s;
    s.total_steps = total_steps;
    s.alpha.resize(static_cast<std::size_t>(total_steps) + 1);
    for (int t = 0; t <= total_steps; ++t) {
        s.alpha[t] = 1.0 - static_cast<double>(t) / total_steps;
    }
    s.validate();
    return s;
}

LatentGrid read_latent(const std::filesystem::path& header_path) {
    std::ifstream in(header_path);
    if (!in) throw IoError("cannot open: " + header_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad latent header " + header_path.string() + ": " + e.what());
    }
    LatentGrid grid;
    try {
        grid.channels = j.at("channels").get<int>();
        grid.height = j.at("height").get<int>();
        grid.width = j.at("width").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad latent header " + header_path.string() + ": " + e.what());
    }
    if (grid.channels < 1 || grid.height < 1 || grid.width < 1) {
        throw IoError("latent header has non-positive dims: " + header_path.string());
    }

    const std::filesystem::path raw_path =
        std::filesystem::path(header_path).replace_extension(".raw");
    std::ifstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError("cannot open: " + raw_path.string());
    const std::size_t n = static_cast<std::size_t>(grid.channels) * grid.height * grid.width;
    std::vector<float> buf(n);
    raw.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * sizeof(float)));
    if (raw.gcount() != static_cast<std::streamsize>(n * sizeof(float))) {
        throw IoError("latent raw file truncated: " + raw_path.string());
    }
    grid.values.assign(buf.begin(), buf.end());
    grid.validate();
    return grid;
}

void write_latent(const std::filesystem::path& header_path, const LatentGrid& grid) {
    grid.validate();
    nlohmann::json j{{"channels", grid.channels}, {"height", grid.height}, {"width", grid.width}};
    std::ofstream out(header_path);
    if (!out) throw IoError("cannot open for writing: " + header_path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + header_path.string());

    const std::filesystem::path raw_path =
        std::filesystem::path(header_path).replace_extension(".raw");
    std::ofstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError("cannot open for writing: " + raw_path.string());
    std::vector<float> buf(grid.values.begin(), grid.values.end());
    raw.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!raw) throw IoError("write failed: " + raw_path.string());
}

NoiseSchedule read_schedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad schedule JSON " + path.string() + ": " + e.what());
    }
    if (!j.is_array() || j.size() < 2) {
        throw IoError("schedule JSON must be an array of >= 2 alphas: " + path.string());
    }
    NoiseSchedule s;
    s.total_steps = static_cast<int>(j.size()) - 1;
    for (const auto& a : j) s.alpha.push_back(a.get<double>());
    s.validate();
    return s;
}

void write_schedule(const std::filesystem::path& path, const NoiseSchedule& schedule) {
    schedule.validate();
    nlohmann::json j = nlohmann::json::array();
    for (double a : schedule.alpha) j.push_back(a);
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace selfiekit
