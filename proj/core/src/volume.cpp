// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/volume.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace selfiekit {

using nlohmann::json;

void DensityVolume::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 2) throw InvalidInputError("volume dims must be >= 2 on every axis");
        if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
            throw InvalidInputError("volume spacing must be strictly positive and finite");
        }
        if (!std::isfinite(origin[a])) throw InvalidInputError("volume origin must be finite");
    }
    const std::size_t n = node_count();
    if (density.size() != n) throw InvalidInputError("density grid size does not match dims");
    if (color.size() != 3 * n) throw InvalidInputError("color grid size does not match dims");
    for (float d : density) {
        if (!std::isfinite(d)) throw InvalidInputError("density contains non-finite values");
    }
    for (float c : color) {
        if (!std::isfinite(c) || c < 0.0f || c > 1.0f) {
            throw InvalidInputError("color channels must be finite and within [0,1]");
        }
    }
}

namespace {

Eigen::Vector3d vec3_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) {
        throw IoError(std::string("volume header: ") + what + " must be a 3-array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

VolumeFile read_volume(const std::filesystem::path& header_path) {
    std::ifstream hdr(header_path);
    if (!hdr) throw IoError("cannot open volume header: " + header_path.string());
    json j;
    try {
        hdr >> j;
    } catch (const json::exception& e) {
        throw IoError("volume header parse error in " + header_path.string() + ": " + e.what());
    }

    VolumeFile out;
    DensityVolume& v = out.volume;
    const auto jd = j.at("dims");
    if (!jd.is_array() || jd.size() != 3) throw IoError("volume header: dims must be a 3-array");
    for (int a = 0; a < 3; ++a) v.dims[a] = jd[a].get<int>();
    v.origin = vec3_from_json(j.at("origin"), "origin");
    v.spacing = vec3_from_json(j.at("spacing"), "spacing");

    if (j.contains("landmarks")) {
        const auto& jl = j.at("landmarks");
        VolumeLandmarks lm;
        lm.eye_left = vec3_from_json(jl.at("eye_left"), "landmarks.eye_left");
        lm.eye_right = vec3_from_json(jl.at("eye_right"), "landmarks.eye_right");
        lm.mouth_avg = vec3_from_json(jl.at("mouth_avg"), "landmarks.mouth_avg");
        out.landmarks = lm;
    }

    std::filesystem::path raw_path = header_path;
    raw_path.replace_extension(".raw");
    std::ifstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError("cannot open volume data: " + raw_path.string());

    const std::size_t n = v.node_count();
    v.density.resize(n);
    v.color.resize(3 * n);
    raw.read(reinterpret_cast<char*>(v.density.data()),
             static_cast<std::streamsize>(n * sizeof(float)));
    raw.read(reinterpret_cast<char*>(v.color.data()),
             static_cast<std::streamsize>(3 * n * sizeof(float)));
    if (!raw) throw IoError("volume data truncated: " + raw_path.string());

    v.validate();
    return out;
}

void write_volume(const std::filesystem::path& stem, const DensityVolume& volume,
                  const std::optional<VolumeLandmarks>& landmarks) {
    volume.validate();

    json j;
    j["dims"] = {volume.dims[0], volume.dims[1], volume.dims[2]};
    j["origin"] = {volume.origin.x(), volume.origin.y(), volume.origin.z()};
    j["spacing"] = {volume.spacing.x(), volume.spacing.y(), volume.spacing.z()};
    if (landmarks) {
        j["landmarks"] = {
            {"eye_left", {landmarks->eye_left.x(), landmarks->eye_left.y(), landmarks->eye_left.z()}},
            {"eye_right",
             {landmarks->eye_right.x(), landmarks->eye_right.y(), landmarks->eye_right.z()}},
            {"mouth_avg",
             {landmarks->mouth_avg.x(), landmarks->mouth_avg.y(), landmarks->mouth_avg.z()}}};
    }

    std::filesystem::path header_path = stem;
    header_path.replace_extension(".json");
    std::ofstream hdr(header_path);
    if (!hdr) throw IoError("cannot write volume header: " + header_path.string());
    hdr << j.dump(2) << "\n";

    std::filesystem::path raw_path = stem;
    raw_path.replace_extension(".raw");
    std::ofstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError("cannot write volume data: " + raw_path.string());
    raw.write(reinterpret_cast<const char*>(volume.density.data()),
              static_cast<std::streamsize>(volume.density.size() * sizeof(float)));
    raw.write(reinterpret_cast<const char*>(volume.color.data()),
              static_cast<std::streamsize>(volume.color.size() * sizeof(float)));
    if (!raw) throw IoError("failed writing volume data: " + raw_path.string());
}

} // namespace selfiekit
