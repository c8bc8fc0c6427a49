// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace selfiekit {

enum class LabelGroup { Upper, Lower, Shoes, Other };

const char* to_string(LabelGroup group);
LabelGroup label_group_from_string(const std::string& s);

struct TaxonomyEntry {
    std::string name;
    LabelGroup group = LabelGroup::Other;
};

using Taxonomy = std::map<int, TaxonomyEntry>;

/// Set of semantic label ids (the P_u / P_l / P_s / P_r roles).
using LabelSet = std::set<int>;

/// Per-pixel clothing/parsing labels plus the taxonomy giving each id a name
/// and body-part group.
struct SemanticMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels; // row-major
    Taxonomy taxonomy;

    std::uint8_t label_at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }

    /// Throws InvalidInputError if dimensions/buffer disagree or any pixel
    /// label is missing from the taxonomy.
    void validate() const;
};

/// Half-open pixel rectangle [x0, x1) × [y0, y1).
struct BBox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    void validate() const; // InvalidInputError unless x0 < x1 and y0 < y1
};

/// Binary region; 1 marks foreground / pixels to inpaint.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // 0 or 1, row-major

    Mask() = default;
    Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::size_t count() const;
    bool operator==(const Mask&) const = default;
};

/// Taxonomy JSON: array of {id, name, group}.
Taxonomy read_taxonomy(const std::filesystem::path& path);
void write_taxonomy(const std::filesystem::path& path, const Taxonomy& taxonomy);

/// Label image = 8-bit single-channel PNG; taxonomy sidecar JSON.
SemanticMap read_semantic_map(const std::filesystem::path& png_path,
                              const std::filesystem::path& taxonomy_path);
void write_semantic_map(const std::filesystem::path& png_path,
                        const std::filesystem::path& taxonomy_path, const SemanticMap& map);

/// Masks stored as 0/255 PNG; any nonzero pixel reads back as 1.
Mask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const Mask& mask);

} // namespace selfiekit
