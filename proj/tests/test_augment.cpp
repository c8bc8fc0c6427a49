// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "selfiekit/augment.hpp"
#include "selfiekit/errors.hpp"

using namespace selfiekit;

namespace {

// Frozen reference for the library's per-item draw scheme: rejection-sampled
// uniform integers from mt19937_64(seed + index). Kept inline so the tests
// pin the published behaviour rather than the header's implementation.
std::uint64_t ref_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

ImageU8 gradient_image(int w, int h, int tag) {
    ImageU8 img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y, 0) = static_cast<std::uint8_t>(10 + (x * 97 + tag) % 246);
            img.at(x, y, 1) = static_cast<std::uint8_t>(10 + (y * 61 + tag * 7) % 246);
            img.at(x, y, 2) = static_cast<std::uint8_t>(10 + (x + y + tag * 13) % 246);
        }
    }
    return img;
}

// Tight box over pixels that differ from `base`, as (x0, y0, x1, y1) half-open.
BBox diff_bbox(const ImageU8& out, const ImageU8& base) {
    BBox box{out.width, out.height, 0, 0};
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            for (int c = 0; c < out.channels; ++c) {
                if (out.at(x, y, c) != base.at(x, y, c)) {
                    box.x0 = std::min(box.x0, x);
                    box.y0 = std::min(box.y0, y);
                    box.x1 = std::max(box.x1, x + 1);
                    box.y1 = std::max(box.y1, y + 1);
                    break;
                }
            }
        }
    }
    return box;
}

// Tight box over nonzero pixels.
BBox nonzero_bbox(const ImageU8& img) {
    return diff_bbox(img, ImageU8(img.width, img.height, img.channels));
}

CompositeSpec base_spec() {
    CompositeSpec spec;
    spec.background = gradient_image(64, 64, 1);
    spec.inpaint_mask = Mask(64, 64);
    spec.part_bbox = {20, 10, 44, 30};
    spec.selfie = gradient_image(16, 20, 2);
    spec.part = SelfiePart::Upper;
    return spec;
}

} // namespace

TEST_CASE("height-matched selfies paste unscaled and centred") {
    const CompositeSpec spec = base_spec(); // bbox 24x20, selfie 16x20
    const ImageU8 out = compose_finetune_target(spec);
    REQUIRE(out.width == 64);
    REQUIRE(out.height == 64);
    // centre (32, 20); paste origin (32-8, 20-10) = (24, 10).
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            for (int c = 0; c < 3; ++c) {
                const bool pasted = x >= 24 && x < 40 && y >= 10 && y < 30;
                const std::uint8_t want = pasted ? spec.selfie.at(x - 24, y - 10, c)
                                                 : spec.background.at(x, y, c);
                CHECK(out.at(x, y, c) == want);
            }
        }
    }
}

TEST_CASE("a half-height bbox halves both selfie dimensions") {
    CompositeSpec spec = base_spec();
    spec.selfie = gradient_image(32, 40, 3);
    spec.part_bbox = {20, 10, 44, 30}; // height 20 = selfie height / 2
    const ImageU8 out = compose_finetune_target(spec);
    const BBox pasted = diff_bbox(out, spec.background);
    CHECK(pasted.width() == 16);
    CHECK(pasted.height() == 20);
    // Centred on the bbox centre (32, 20).
    CHECK(pasted.x0 == 24);
    CHECK(pasted.y0 == 10);
}

TEST_CASE("wide selfies clip against the background edge") {
    CompositeSpec spec = base_spec();
    spec.selfie = gradient_image(60, 20, 4);
    spec.part_bbox = {0, 20, 8, 40}; // centre (4, 30), selfie stays 60 wide
    const ImageU8 out = compose_finetune_target(spec);
    // Paste origin (4 - 30, 30 - 10) = (-26, 20): columns [0, 34) survive.
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            for (int c = 0; c < 3; ++c) {
                const bool pasted = x < 34 && y >= 20 && y < 40;
                const std::uint8_t want = pasted ? spec.selfie.at(x + 26, y - 20, c)
                                                 : spec.background.at(x, y, c);
                CHECK(out.at(x, y, c) == want);
            }
        }
    }
}

TEST_CASE("pasted aspect ratio tracks the source within a pixel") {
    for (const auto& [sw, sh] : std::vector<std::pair<int, int>>{
             {30, 50}, {50, 30}, {17, 23}, {64, 64}, {9, 40}}) {
        CAPTURE(sw);
        CAPTURE(sh);
        CompositeSpec spec = base_spec();
        spec.selfie = gradient_image(sw, sh, 5);
        spec.part_bbox = {16, 16, 48, 47}; // height 31
        const ImageU8 out = compose_finetune_target(spec);
        const BBox pasted = diff_bbox(out, spec.background);
        if (pasted.x0 > pasted.x1) continue; // fully clipped (cannot happen here)
        CHECK(pasted.height() == 31);
        const double expect_w = static_cast<double>(sw) * 31 / sh;
        CHECK(std::abs(pasted.width() - expect_w) <= 1.0);
    }
}

TEST_CASE("composite preconditions reject malformed specs") {
    CompositeSpec spec = base_spec();
    spec.part_bbox = {20, 10, 44, 10}; // zero height
    CHECK_THROWS_AS(compose_finetune_target(spec), InvalidInputError);
    spec = base_spec();
    spec.part_bbox = {20, 10, 70, 30}; // leaves the background
    CHECK_THROWS_AS(compose_finetune_target(spec), InvalidInputError);
    spec = base_spec();
    spec.inpaint_mask = Mask(32, 64); // mask mismatch
    CHECK_THROWS_AS(compose_finetune_target(spec), InvalidInputError);
}

TEST_CASE("fine-tune sets are complete, deterministic, and replayable") {
    std::vector<PoolCandidate> pool;
    for (int i = 0; i < 4; ++i) {
        PoolCandidate cand;
        cand.background = gradient_image(48, 48, 10 + i);
        cand.inpaint_mask = Mask(48, 48);
        cand.part_boxes[SelfiePart::Face] = {4 + i, 2, 20 + i, 14};
        cand.part_boxes[SelfiePart::Upper] = {8, 14, 40, 34};
        if (i % 2 == 0) cand.part_boxes[SelfiePart::Shoes] = {16, 36, 32, 46};
        pool.push_back(std::move(cand));
    }
    std::map<SelfiePart, ImageU8> selfies;
    selfies[SelfiePart::Face] = gradient_image(12, 12, 20);
    selfies[SelfiePart::Upper] = gradient_image(24, 20, 21);
    selfies[SelfiePart::Shoes] = gradient_image(18, 10, 22);

    AugmentPlan plan;
    plan.pool_size = static_cast<int>(pool.size());
    plan.num_outputs = 25;
    plan.rng_seed = 99;

    const FinetuneSet set = build_finetune_set(pool, selfies, plan);
    REQUIRE(set.images.size() == 25);
    REQUIRE(set.manifest.size() == 25);

    SUBCASE("same seed reproduces the set bit-exactly") {
        const FinetuneSet again = build_finetune_set(pool, selfies, plan);
        for (std::size_t i = 0; i < set.images.size(); ++i) {
            CHECK(set.images[i] == again.images[i]);
            CHECK(set.manifest[i].candidate_index == again.manifest[i].candidate_index);
            CHECK(set.manifest[i].part == again.manifest[i].part);
        }
    }
    SUBCASE("a different seed changes the draw sequence") {
        AugmentPlan other = plan;
        other.rng_seed = 100;
        const FinetuneSet different = build_finetune_set(pool, selfies, other);
        bool any_diff = false;
        for (std::size_t i = 0; i < set.manifest.size(); ++i) {
            any_diff = any_diff ||
                       set.manifest[i].candidate_index != different.manifest[i].candidate_index ||
                       set.manifest[i].part != different.manifest[i].part;
        }
        CHECK(any_diff);
    }
    SUBCASE("draws replay from the per-item streams") {
        // Candidate draw first, then the part from the candidate's usable
        // list (part-box map order filtered by available selfies).
        for (int i = 0; i < plan.num_outputs; ++i) {
            std::mt19937_64 rng(plan.rng_seed + static_cast<std::uint64_t>(i));
            const auto cand = static_cast<std::size_t>(ref_below(rng, pool.size()));
            std::vector<SelfiePart> usable;
            for (const auto& [part, box] : pool[cand].part_boxes) {
                if (selfies.count(part)) usable.push_back(part);
            }
            const SelfiePart part = usable[ref_below(rng, usable.size())];
            CHECK(set.manifest[i].candidate_index == static_cast<int>(cand));
            CHECK(set.manifest[i].part == part);

            CompositeSpec spec;
            spec.background = pool[cand].background;
            spec.inpaint_mask = pool[cand].inpaint_mask;
            spec.part_bbox = pool[cand].part_boxes.at(part);
            spec.selfie = selfies.at(part);
            spec.part = part;
            CHECK(set.images[i] == compose_finetune_target(spec));
        }
    }
    SUBCASE("a pool of one uses candidate zero throughout") {
        const std::vector<PoolCandidate> single(pool.begin(), pool.begin() + 1);
        AugmentPlan small = plan;
        small.pool_size = 1;
        small.num_outputs = 10;
        const FinetuneSet s = build_finetune_set(single, selfies, small);
        for (const auto& e : s.manifest) CHECK(e.candidate_index == 0);
    }
    SUBCASE("candidates without a usable part are rejected") {
        std::vector<PoolCandidate> bad = pool;
        bad[1].part_boxes.clear();
        bad[1].part_boxes[SelfiePart::Lower] = {8, 14, 40, 34}; // no lower selfie
        CHECK_THROWS_AS(build_finetune_set(bad, selfies, plan), InvalidInputError);
        CHECK_THROWS_AS(build_finetune_set({}, selfies, plan), InvalidInputError);
        CHECK_THROWS_AS(build_finetune_set(pool, {}, plan), InvalidInputError);
    }
}

TEST_CASE("dreambooth outputs are zero-padded squares in the drawn range") {
    const ImageU8 face = gradient_image(96, 96, 30); // all values >= 10

    SUBCASE("face defaults: nonzero box within [350, 450], square, zero border") {
        const auto outs = dreambooth_pad_augment(face, 350, 450, 512, 50, 7);
        REQUIRE(outs.size() == 50);
        for (const auto& img : outs) {
            REQUIRE(img.width == 512);
            REQUIRE(img.height == 512);
            const BBox box = nonzero_bbox(img);
            CHECK(box.width() >= 350);
            CHECK(box.width() <= 450);
            CHECK(std::abs(box.width() - box.height()) <= 1);
            // Everything outside the box is exactly zero.
            long outside = 0;
            for (int y = 0; y < 512; ++y) {
                for (int x = 0; x < 512; ++x) {
                    if (x >= box.x0 && x < box.x1 && y >= box.y0 && y < box.y1) continue;
                    for (int c = 0; c < 3; ++c) outside += img.at(x, y, c);
                }
            }
            CHECK(outside == 0);
        }
    }
    SUBCASE("draws replay: the nonzero box sits exactly at (ox, oy, ox+r, oy+r)") {
        const auto outs = dreambooth_pad_augment(face, 300, 400, 512, 20, 123);
        for (int i = 0; i < 20; ++i) {
            std::mt19937_64 rng(123 + static_cast<std::uint64_t>(i));
            const int r = 300 + static_cast<int>(ref_below(rng, 101));
            const int ox = static_cast<int>(ref_below(rng, static_cast<std::uint64_t>(512 - r + 1)));
            const int oy = static_cast<int>(ref_below(rng, static_cast<std::uint64_t>(512 - r + 1)));
            const BBox box = nonzero_bbox(outs[i]);
            CHECK(box.x0 == ox);
            CHECK(box.y0 == oy);
            CHECK(box.x1 == ox + r);
            CHECK(box.y1 == oy + r);
        }
    }
    SUBCASE("min = max = out leaves no padding") {
        const auto outs = dreambooth_pad_augment(face, 512, 512, 512, 3, 1);
        for (const auto& img : outs) {
            const BBox box = nonzero_bbox(img);
            CHECK(box.x0 == 0);
            CHECK(box.y0 == 0);
            CHECK(box.x1 == 512);
            CHECK(box.y1 == 512);
        }
        // All three identical: no randomness left to consume.
        CHECK(outs[1] == outs[0]);
        CHECK(outs[2] == outs[0]);
    }
    SUBCASE("same seed reproduces the set, different seed varies it") {
        const auto a = dreambooth_pad_augment(face, 350, 450, 512, 8, 7);
        const auto b = dreambooth_pad_augment(face, 350, 450, 512, 8, 7);
        const auto c = dreambooth_pad_augment(face, 350, 450, 512, 8, 8);
        CHECK(a == b);
        CHECK(a != c);
    }
    SUBCASE("centre crop governs which source pixels survive") {
        ImageU8 wide = gradient_image(64, 32, 31);
        for (int y = 0; y < 32; ++y) {
            for (int c = 0; c < 3; ++c) wide.at(0, y, c) = 255; // marker column
        }
        const auto cropped = dreambooth_pad_augment(wide, 32, 32, 32, 1, 0, true);
        const auto stretched = dreambooth_pad_augment(wide, 32, 32, 32, 1, 0, false);
        // Crop keeps the central 32 columns: the marker is gone.
        ImageU8 crop_oracle(32, 32, 3);
        for (int y = 0; y < 32; ++y) {
            for (int x = 0; x < 32; ++x) {
                for (int c = 0; c < 3; ++c) crop_oracle.at(x, y, c) = wide.at(16 + x, y, c);
            }
        }
        CHECK(cropped[0] == crop_oracle);
        CHECK(stretched[0] != crop_oracle);
        // Bilinear halving blends the 255 marker with its neighbour (~138),
        // so the stretched output's first column stays bright (~196).
        bool marker_present = false;
        for (int y = 0; y < 32; ++y) marker_present = marker_present || stretched[0].at(0, y, 0) > 180;
        CHECK(marker_present);
    }
    SUBCASE("bad resolution ranges and counts throw") {
        CHECK_THROWS_AS(dreambooth_pad_augment(face, 0, 450, 512, 1, 0), InvalidInputError);
        CHECK_THROWS_AS(dreambooth_pad_augment(face, 450, 350, 512, 1, 0), InvalidInputError);
        CHECK_THROWS_AS(dreambooth_pad_augment(face, 350, 600, 512, 1, 0), InvalidInputError);
        CHECK_THROWS_AS(dreambooth_pad_augment(face, 350, 450, 512, -1, 0), InvalidInputError);
        CHECK(dreambooth_pad_augment(face, 350, 450, 512, 0, 0).empty());
        CHECK_THROWS_AS(dreambooth_pad_augment(ImageU8(), 350, 450, 512, 1, 0),
                        InvalidInputError);
    }
}
