// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "selfiekit/image.hpp"
#include "selfiekit/semantic_map.hpp"

namespace selfiekit {

enum class SelfiePart { Face, Upper, Lower, Shoes };

const char* to_string(SelfiePart part);
SelfiePart selfie_part_from_string(const std::string& s);

/// One fine-tuning composite: paste a selfie over a body-part box of a
/// candidate background. The inpaint mask rides along for the training pair.
struct CompositeSpec {
    ImageU8 background;
    Mask inpaint_mask;
    BBox part_bbox;
    ImageU8 selfie;
    SelfiePart part = SelfiePart::Upper;

    /// InvalidInputError when the bbox leaves the background or the mask
    /// dimensions disagree with it.
    void validate() const;
};

/// Pool/output sizes and seed for the fine-tuning augmentation run.
struct AugmentPlan {
    int pool_size = 20;
    int num_outputs = 200;
    std::uint64_t rng_seed = 0;

    void validate() const; // InvalidInputError unless pool_size, num_outputs >= 1
};

/// Selfie resized so its height matches the part box (aspect preserved),
/// then pasted centred on the box centre; anything falling outside the
/// background is clipped away. Background pixels elsewhere are untouched.
ImageU8 compose_finetune_target(const CompositeSpec& spec, bool area_filter = false);

/// A candidate background plus the body-part boxes found in it.
struct PoolCandidate {
    ImageU8 background;
    Mask inpaint_mask;
    std::map<SelfiePart, BBox> part_boxes;
};

struct FinetuneEntry {
    int candidate_index = 0;
    SelfiePart part = SelfiePart::Upper;
};

struct FinetuneSet {
    std::vector<ImageU8> images;
    std::vector<FinetuneEntry> manifest; // parallel to images
};

/// Draws plan.num_outputs composites: per output, a candidate then a selfie
/// part are drawn from the stream mt19937_64(seed + output_index), so the
/// set is reproducible independent of execution order. Every candidate must
/// offer at least one part with a matching selfie.
FinetuneSet build_finetune_set(const std::vector<PoolCandidate>& pool,
                               const std::map<SelfiePart, ImageU8>& selfies,
                               const AugmentPlan& plan);

/// DreamBooth-style inputs: per output i, the (square, optionally
/// centre-cropped) image is resized to r ∈ [min_res, max_res] drawn from
/// mt19937_64(seed + i) (then x offset, then y offset) and zero-padded into
/// an out_res² canvas. Face default range is 350–450, shoes 400–500,
/// 50 outputs each.
std::vector<ImageU8> dreambooth_pad_augment(const ImageU8& image, int min_res, int max_res,
                                            int out_res, int count, std::uint64_t rng_seed,
                                            bool center_crop = true);

} // namespace selfiekit
