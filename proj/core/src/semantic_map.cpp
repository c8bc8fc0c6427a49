// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/semantic_map.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "selfiekit/errors.hpp"
#include "selfiekit/png_io.hpp"

namespace selfiekit {

const char* to_string(LabelGroup group) {
    switch (group) {
        case LabelGroup::Upper: return "upper";
        case LabelGroup::Lower: return "lower";
        case LabelGroup::Shoes: return "shoes";
        case LabelGroup::Other: return "other";
    }
    throw InvalidInputError("unknown label group");
}

LabelGroup label_group_from_string(const std::string& s) {
    if (s == "upper") return LabelGroup::Upper;
    if (s == "lower") return LabelGroup::Lower;
    if (s == "shoes") return LabelGroup::Shoes;
    if (s == "other") return LabelGroup::Other;
    throw InvalidInputError("unknown label group: " + s);
}

void SemanticMap::validate() const {
    if (width < 1 || height < 1) throw InvalidInputError("semantic map: empty dimensions");
    if (labels.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidInputError("semantic map: label buffer does not match dimensions");
    }
    for (std::uint8_t l : labels) {
        if (!taxonomy.count(l)) {
            throw InvalidInputError("semantic map: pixel label " + std::to_string(int(l)) +
                                    " missing from taxonomy");
        }
    }
}

void BBox::validate() const {
    if (!(x0 < x1 && y0 < y1)) throw InvalidInputError("bbox: empty or inverted");
}

std::size_t Mask::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t(1)));
}

Taxonomy read_taxonomy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad taxonomy JSON " + path.string() + ": " + e.what());
    }
    Taxonomy tax;
    try {
        for (const auto& entry : j) {
            const int id = entry.at("id").get<int>();
            TaxonomyEntry te;
            te.name = entry.at("name").get<std::string>();
            te.group = label_group_from_string(entry.at("group").get<std::string>());
            if (!tax.emplace(id, te).second) {
                throw InvalidInputError("taxonomy: duplicate id " + std::to_string(id));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad taxonomy JSON " + path.string() + ": " + e.what());
    }
    return tax;
}

void write_taxonomy(const std::filesystem::path& path, const Taxonomy& taxonomy) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [id, entry] : taxonomy) {
        j.push_back({{"id", id}, {"name", entry.name}, {"group", to_string(entry.group)}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

SemanticMap read_semantic_map(const std::filesystem::path& png_path,
                              const std::filesystem::path& taxonomy_path) {
    const ImageU8 img = read_png(png_path);
    if (img.channels != 1) {
        throw IoError("semantic map must be single-channel: " + png_path.string());
    }
    SemanticMap map;
    map.width = img.width;
    map.height = img.height;
    map.labels = img.data;
    map.taxonomy = read_taxonomy(taxonomy_path);
    map.validate();
    return map;
}

void write_semantic_map(const std::filesystem::path& png_path,
                        const std::filesystem::path& taxonomy_path, const SemanticMap& map) {
    map.validate();
    ImageU8 img(map.width, map.height, 1);
    img.data = map.labels;
    write_png(png_path, img);
    write_taxonomy(taxonomy_path, map.taxonomy);
}

Mask read_mask(const std::filesystem::path& path) {
    const ImageU8 img = read_png(path);
    if (img.channels != 1) throw IoError("mask must be single-channel: " + path.string());
    Mask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) mask.bits[i] = img.data[i] ? 1 : 0;
    return mask;
}

void write_mask(const std::filesystem::path& path, const Mask& mask) {
    ImageU8 img(mask.width, mask.height, 1);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) img.data[i] = mask.bits[i] ? 255 : 0;
    write_png(path, img);
}

} // namespace selfiekit
