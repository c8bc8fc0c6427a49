// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "selfiekit/image.hpp"
#include "selfiekit/semantic_map.hpp"

namespace selfiekit {

/// Default minimum pixel counts for a clothing label to count as present.
inline constexpr int kSelfieMinPixels = 21;    // labels in a simulated selfie
inline constexpr int kReferenceMinPixels = 5;  // labels in a reference photo

/// Labels covering at least min_pixels pixels whose group is in `groups`.
LabelSet extract_label_set(const SemanticMap& map, int min_pixels,
                           const std::set<LabelGroup>& groups = {LabelGroup::Upper,
                                                                 LabelGroup::Lower,
                                                                 LabelGroup::Shoes});

/// |p_r ∩ (p_u ∪ p_l ∪ p_s)| — how many of the reference photo's clothing
/// labels the selfies cover.
int match_score(const LabelSet& p_r, const LabelSet& p_u, const LabelSet& p_l,
                const LabelSet& p_s);

struct RankedPhoto {
    std::size_t index = 0;
    int score = 0;
    bool operator==(const RankedPhoto&) const = default;
};

/// Scores every candidate reference map against the selfie label sets and
/// sorts descending, ties keeping collection order.
std::vector<RankedPhoto> rank_collection(const LabelSet& p_u, const LabelSet& p_l,
                                         const LabelSet& p_s,
                                         const std::vector<SemanticMap>& collection,
                                         int min_pixels = kReferenceMinPixels);

/// Tight box over all pixels whose group is not `other`.
/// Throws NotFoundError when the map holds no person pixels.
BBox person_bbox(const SemanticMap& map);

/// Scales the box about its center, clamps to the image, and rasterizes it
/// as a filled mask.
Mask scale_bbox_to_mask(const BBox& bbox, double factor, int image_width, int image_height);

/// Default dilation radius applied to foreground masks before inpainting.
inline constexpr int kDefaultDilateRadius = 21;

/// Morphological dilation with a square structuring element of half-width
/// radius_px.
Mask dilate(const Mask& mask, int radius_px);

/// Canny edges of the label boundaries: per-label indicator images are
/// Gaussian-smoothed (σ = 1.4), Sobel gradients accumulated across labels,
/// then non-maximum suppression and hysteresis. Edges depend only on where
/// labels change, never on their numeric values. Returns a 0/255 image.
ImageU8 canny_from_semantic(const SemanticMap& map, double low = 50.0, double high = 150.0);

} // namespace selfiekit
