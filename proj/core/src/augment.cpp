// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/augment.hpp"

#include <cmath>

#include "selfiekit/errors.hpp"
#include "selfiekit/rng.hpp"

namespace selfiekit {

const char* to_string(SelfiePart part) {
    switch (part) {
        case SelfiePart::Face: return "face";
        case SelfiePart::Upper: return "upper";
        case SelfiePart::Lower: return "lower";
        case SelfiePart::Shoes: return "shoes";
    }
    throw InvalidInputError("unknown selfie part");
}

SelfiePart selfie_part_from_string(const std::string& s) {
    if (s == "face") return SelfiePart::Face;
    if (s == "upper") return SelfiePart::Upper;
    if (s == "lower") return SelfiePart::Lower;
    if (s == "shoes") return SelfiePart::Shoes;
    throw InvalidInputError("unknown selfie part: " + s);
}

void CompositeSpec::validate() const {
    part_bbox.validate();
    if (background.width < 1 || background.height < 1 || selfie.width < 1 || selfie.height < 1) {
        throw InvalidInputError("composite: empty image");
    }
    if (part_bbox.x0 < 0 || part_bbox.y0 < 0 || part_bbox.x1 > background.width ||
        part_bbox.y1 > background.height) {
        throw InvalidInputError("composite: part bbox outside background");
    }
    if (inpaint_mask.width != background.width || inpaint_mask.height != background.height) {
        throw InvalidInputError("composite: mask does not match background");
    }
}

void AugmentPlan::validate() const {
    if (pool_size < 1) throw InvalidInputError("augment plan: pool_size must be >= 1");
    if (num_outputs < 1) throw InvalidInputError("augment plan: num_outputs must be >= 1");
}

ImageU8 compose_finetune_target(const CompositeSpec& spec, bool area_filter) {
    spec.validate();
    const int new_h = spec.part_bbox.height();
    const int new_w = std::max<int>(
        1, std::lround(static_cast<double>(spec.selfie.width) * new_h / spec.selfie.height));
    const ImageU8 scaled = resize(spec.selfie, new_w, new_h, area_filter);

    const double cx = (spec.part_bbox.x0 + spec.part_bbox.x1) / 2.0;
    const double cy = (spec.part_bbox.y0 + spec.part_bbox.y1) / 2.0;
    const int ox = static_cast<int>(std::lround(cx - new_w / 2.0));
    const int oy = static_cast<int>(std::lround(cy - new_h / 2.0));

    ImageU8 out = spec.background;
    paste_clipped(out, scaled, ox, oy);
    return out;
}

FinetuneSet build_finetune_set(const std::vector<PoolCandidate>& pool,
                               const std::map<SelfiePart, ImageU8>& selfies,
                               const AugmentPlan& plan) {
    plan.validate();
    if (pool.empty()) throw InvalidInputError("build_finetune_set: empty candidate pool");
    if (selfies.empty()) throw InvalidInputError("build_finetune_set: no selfies");

    // All parts a candidate can host with the selfies on hand, in a fixed order.
    std::vector<std::vector<SelfiePart>> usable(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (const auto& [part, box] : pool[i].part_boxes) {
            if (selfies.count(part)) usable[i].push_back(part);
        }
        if (usable[i].empty()) {
            throw InvalidInputError("build_finetune_set: candidate " + std::to_string(i) +
                                    " offers no part matching a selfie");
        }
    }

    FinetuneSet set;
    set.images.reserve(plan.num_outputs);
    for (int i = 0; i < plan.num_outputs; ++i) {
        auto rng = item_rng(plan.rng_seed, static_cast<std::uint64_t>(i));
        const auto cand = static_cast<std::size_t>(draw_below(rng, pool.size()));
        const SelfiePart part = usable[cand][draw_below(rng, usable[cand].size())];

        CompositeSpec spec;
        spec.background = pool[cand].background;
        spec.inpaint_mask = pool[cand].inpaint_mask;
        spec.part_bbox = pool[cand].part_boxes.at(part);
        spec.selfie = selfies.at(part);
        spec.part = part;
        set.images.push_back(compose_finetune_target(spec));
        set.manifest.push_back({static_cast<int>(cand), part});
    }
    return set;
}

std::vector<ImageU8> dreambooth_pad_augment(const ImageU8& image, int min_res, int max_res,
                                            int out_res, int count, std::uint64_t rng_seed,
                                            bool center_crop) {
    if (image.width < 1 || image.height < 1) {
        throw InvalidInputError("dreambooth_pad_augment: empty image");
    }
    if (min_res < 1 || min_res > max_res) {
        throw InvalidInputError("dreambooth_pad_augment: need 1 <= min_res <= max_res");
    }
    if (max_res > out_res) {
        throw InvalidInputError("dreambooth_pad_augment: max_res exceeds output resolution");
    }
    if (count < 0) throw InvalidInputError("dreambooth_pad_augment: negative count");

    ImageU8 source = image;
    if (center_crop && image.width != image.height) {
        const int side = std::min(image.width, image.height);
        const int x0 = (image.width - side) / 2;
        const int y0 = (image.height - side) / 2;
        ImageU8 crop(side, side, image.channels);
        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                for (int c = 0; c < image.channels; ++c) {
                    crop.at(x, y, c) = image.at(x0 + x, y0 + y, c);
                }
            }
        }
        source = std::move(crop);
    }

    std::vector<ImageU8> outputs;
    outputs.reserve(count);
    for (int i = 0; i < count; ++i) {
        auto rng = item_rng(rng_seed, static_cast<std::uint64_t>(i));
        const int r = draw_range(rng, min_res, max_res);
        const int ox = draw_range(rng, 0, out_res - r);
        const int oy = draw_range(rng, 0, out_res - r);
        const ImageU8 scaled = resize(source, r, r);
        ImageU8 canvas(out_res, out_res, image.channels); // zero-initialized
        paste_clipped(canvas, scaled, ox, oy);
        outputs.push_back(std::move(canvas));
    }
    return outputs;
}

} // namespace selfiekit
