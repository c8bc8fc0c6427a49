// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "selfiekit/errors.hpp"
#include "selfiekit/face_align.hpp"
#include "selfiekit/segmap.hpp"
#include "selfiekit/warp.hpp"

using namespace selfiekit;

namespace {

// Small deterministic generator for test data (keeps tests seed-stable).
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed * 2654435761ULL + 1) {}
    double uniform(double lo, double hi) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53);
        return lo + u * (hi - lo);
    }
    int below(int n) { return static_cast<int>(uniform(0.0, double(n))); }
};

Taxonomy clothing_taxonomy() {
    return {
        {0, {"background", LabelGroup::Other}}, {1, {"shirt", LabelGroup::Upper}},
        {2, {"pants", LabelGroup::Lower}},      {3, {"sneakers", LabelGroup::Shoes}},
        {4, {"face", LabelGroup::Other}},       {5, {"jacket", LabelGroup::Upper}},
        {6, {"skirt", LabelGroup::Lower}},      {7, {"boots", LabelGroup::Shoes}},
    };
}

SemanticMap uniform_map(int w, int h, std::uint8_t label) {
    SemanticMap m;
    m.width = w;
    m.height = h;
    m.labels.assign(static_cast<std::size_t>(w) * h, label);
    m.taxonomy = clothing_taxonomy();
    return m;
}

// Paints `count` pixels of `label` starting at linear index `start`.
void paint(SemanticMap& m, std::uint8_t label, std::size_t start, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) m.labels[start + i] = label;
}

// Independent label-set extraction: plain pixel counting.
LabelSet oracle_labels(const SemanticMap& m, int min_pixels, const std::set<LabelGroup>& groups) {
    std::map<int, long> counts;
    for (std::uint8_t l : m.labels) ++counts[l];
    LabelSet out;
    for (const auto& [id, n] : counts) {
        if (n >= min_pixels && groups.count(m.taxonomy.at(id).group)) out.insert(id);
    }
    return out;
}

} // namespace

TEST_CASE("label sets respect the pixel-count threshold") {
    SemanticMap m = uniform_map(32, 32, 0);
    paint(m, 1, 0, 21);   // shirt: exactly at the selfie threshold
    paint(m, 2, 100, 20); // pants: one below it
    paint(m, 3, 200, 50); // sneakers
    paint(m, 4, 300, 100); // face: big but group Other

    CHECK(extract_label_set(m, kSelfieMinPixels) == LabelSet{1, 3});
    CHECK(extract_label_set(m, kReferenceMinPixels) == LabelSet{1, 2, 3});
    CHECK(extract_label_set(m, 51) == LabelSet{});
    SUBCASE("group filter admits non-clothing labels on request") {
        const LabelSet others = extract_label_set(m, 21, {LabelGroup::Other});
        CHECK(others == LabelSet{0, 4});
    }
    SUBCASE("unknown pixel labels are rejected") {
        m.labels[5] = 200; // not in the taxonomy
        CHECK_THROWS_AS(extract_label_set(m, 21), InvalidInputError);
    }
    SUBCASE("negative threshold is rejected") {
        CHECK_THROWS_AS(extract_label_set(m, -1), InvalidInputError);
    }
}

TEST_CASE("match score counts covered reference labels once") {
    const LabelSet p_r = {1, 2, 3, 6};
    CHECK(match_score(p_r, {1}, {1, 2}, {7}) == 2);  // 1 and 2 covered, 7 irrelevant
    CHECK(match_score(p_r, {1, 2, 3, 6}, {}, {}) == 4);
    CHECK(match_score({}, {1}, {2}, {3}) == 0);
    CHECK(match_score(p_r, {}, {}, {}) == 0);
    // A label present in several selfie sets still counts once.
    CHECK(match_score({5}, {5}, {5}, {5}) == 1);
    // Symmetric in the selfie sets and monotone in the reference set.
    CHECK(match_score(p_r, {7}, {1}, {1, 2}) == match_score(p_r, {1, 2}, {7}, {1}));
    CHECK(match_score({1, 2, 3, 6, 7}, {1}, {1, 2}, {7}) >= match_score(p_r, {1}, {1, 2}, {7}));
}

TEST_CASE("ranking matches a brute-force oracle and keeps tied order") {
    // Ten 16x16 maps with assorted clothing content, including exact duplicates
    // (ties) and maps sharing nothing with the selfie sets (zero scores).
    std::vector<SemanticMap> collection;
    TestRng rng(41);
    for (int i = 0; i < 10; ++i) {
        SemanticMap m = uniform_map(16, 16, 0);
        const int kinds = 1 + rng.below(3);
        for (int k = 0; k < kinds; ++k) {
            const std::uint8_t label = static_cast<std::uint8_t>(1 + rng.below(7));
            paint(m, label, static_cast<std::size_t>(rng.below(200)), 4 + rng.below(30));
        }
        collection.push_back(std::move(m));
    }
    collection.push_back(collection[2]); // guaranteed tie with index 2
    collection.push_back(uniform_map(16, 16, 0)); // guaranteed zero score

    const LabelSet p_u = {1, 5};
    const LabelSet p_l = {2};
    const LabelSet p_s = {3};

    const auto ranked = rank_collection(p_u, p_l, p_s, collection, kReferenceMinPixels);

    // Oracle: score from independently counted label sets, then a stable sort
    // done by repeated max-extraction so tie behaviour is explicit.
    std::vector<int> scores;
    const std::set<LabelGroup> clothing = {LabelGroup::Upper, LabelGroup::Lower,
                                           LabelGroup::Shoes};
    for (const auto& m : collection) {
        const LabelSet p_ref = oracle_labels(m, kReferenceMinPixels, clothing);
        int s = 0;
        for (int id : p_ref) {
            if (p_u.count(id) || p_l.count(id) || p_s.count(id)) ++s;
        }
        scores.push_back(s);
    }
    std::vector<RankedPhoto> expected;
    std::vector<bool> used(collection.size(), false);
    for (std::size_t n = 0; n < collection.size(); ++n) {
        std::size_t best = collection.size();
        for (std::size_t i = 0; i < collection.size(); ++i) {
            if (!used[i] && (best == collection.size() || scores[i] > scores[best])) best = i;
        }
        used[best] = true;
        expected.push_back({best, scores[best]});
    }

    REQUIRE(ranked.size() == expected.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(ranked[i] == expected[i]);
    }
    // Every candidate appears exactly once, zero scores included.
    std::vector<bool> seen(collection.size(), false);
    for (const auto& r : ranked) seen[r.index] = true;
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    // The duplicate of map 2 ties with it and stays behind it.
    std::size_t pos2 = 0, pos_dup = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (ranked[i].index == 2) pos2 = i;
        if (ranked[i].index == 10) pos_dup = i;
    }
    CHECK(ranked[pos2].score == ranked[pos_dup].score);
    CHECK(pos2 < pos_dup);

    SUBCASE("appending zero-score maps leaves the prefix unchanged") {
        std::vector<SemanticMap> extended = collection;
        extended.push_back(uniform_map(16, 16, 4));
        const auto ranked2 = rank_collection(p_u, p_l, p_s, extended, kReferenceMinPixels);
        REQUIRE(ranked2.size() == ranked.size() + 1);
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            if (ranked[i].score > 0) CHECK(ranked2[i] == ranked[i]);
        }
    }
    SUBCASE("empty collections rank to an empty list") {
        CHECK(rank_collection(p_u, p_l, p_s, {}, kReferenceMinPixels).empty());
    }
}

TEST_CASE("person bbox is tight over non-background pixels") {
    SemanticMap m = uniform_map(16, 16, 0);
    m.labels[4 * 16 + 3] = 1;   // (3, 4)
    m.labels[12 * 16 + 10] = 2; // (10, 12)
    const BBox box = person_bbox(m);
    CHECK(box.x0 == 3);
    CHECK(box.y0 == 4);
    CHECK(box.x1 == 11);
    CHECK(box.y1 == 13);

    SUBCASE("an L-shaped region gives its hand-computed box") {
        SemanticMap f = uniform_map(12, 12, 0);
        for (int y = 2; y < 9; ++y) f.labels[static_cast<std::size_t>(y) * 12 + 4] = 1;
        for (int x = 4; x < 10; ++x) f.labels[8 * 12 + x] = 2;
        const BBox fb = person_bbox(f);
        CHECK(fb.x0 == 4);
        CHECK(fb.y0 == 2);
        CHECK(fb.x1 == 10);
        CHECK(fb.y1 == 9);
    }
    SUBCASE("labels outside the clothing groups never extend the box") {
        SemanticMap f = uniform_map(8, 8, 0);
        f.labels[1 * 8 + 1] = 4; // face: group "other"
        f.labels[5 * 8 + 5] = 3; // sneakers
        const BBox fb = person_bbox(f);
        CHECK(fb.x0 == 5);
        CHECK(fb.y0 == 5);
        CHECK(fb.width() == 1);
        CHECK(fb.height() == 1);
    }
    SUBCASE("maps without person-group pixels throw") {
        CHECK_THROWS_AS(person_bbox(uniform_map(8, 8, 0)), NotFoundError);
        SemanticMap f = uniform_map(8, 8, 0);
        f.labels[9] = 4; // face only: still group "other"
        CHECK_THROWS_AS(person_bbox(f), NotFoundError);
    }
}

TEST_CASE("scaled bbox masks follow the worked geometry") {
    const BBox box{10, 20, 30, 50}; // 20 x 30

    SUBCASE("factor 1 reproduces the box") {
        const Mask m = scale_bbox_to_mask(box, 1.0, 100, 100);
        CHECK(m.count() == 600);
        for (int y = 0; y < 100; ++y) {
            for (int x = 0; x < 100; ++x) {
                const bool inside = x >= 10 && x < 30 && y >= 20 && y < 50;
                CHECK(m.at(x, y) == (inside ? 1 : 0));
            }
        }
    }
    SUBCASE("factor 1.1 grows about the centre") {
        // centre (20, 35); 22 x 33; x0 = round(20 - 11) = 9, y0 = round(35 - 16.5) = 19.
        const Mask m = scale_bbox_to_mask(box, 1.1, 100, 100);
        CHECK(m.count() == 22u * 33u);
        CHECK(m.at(9, 19) == 1);
        CHECK(m.at(30, 51) == 1);
        CHECK(m.at(8, 19) == 0);
        CHECK(m.at(31, 51) == 0);
        CHECK(m.at(9, 18) == 0);
        CHECK(m.at(9, 52) == 0);
    }
    SUBCASE("boxes clamp against the image") {
        const Mask m = scale_bbox_to_mask({0, 0, 40, 40}, 2.0, 50, 50);
        // 80x80 box centred at (20, 20) -> [-20, 60) clamps to the full image.
        CHECK(m.count() == 50u * 50u);
    }
    SUBCASE("growing factors give nested masks") {
        TestRng rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            const int x0 = rng.below(60), y0 = rng.below(60);
            const BBox b{x0, y0, x0 + 1 + rng.below(30), y0 + 1 + rng.below(30)};
            Mask prev = scale_bbox_to_mask(b, 1.0, 90, 90);
            for (const double f : {1.1, 1.5, 2.0}) {
                const Mask next = scale_bbox_to_mask(b, f, 90, 90);
                for (std::size_t i = 0; i < prev.bits.size(); ++i) {
                    if (prev.bits[i]) CHECK(next.bits[i] == 1);
                }
                prev = next;
            }
        }
    }
    SUBCASE("invalid inputs throw") {
        CHECK_THROWS_AS(scale_bbox_to_mask({5, 5, 5, 9}, 1.1, 10, 10), InvalidInputError);
        CHECK_THROWS_AS(scale_bbox_to_mask(box, 0.0, 100, 100), InvalidInputError);
        CHECK_THROWS_AS(scale_bbox_to_mask(box, 1.1, 0, 100), InvalidInputError);
    }
}

TEST_CASE("dilation equals the brute-force max filter") {
    TestRng rng(17);
    Mask m(64, 64);
    for (auto& b : m.bits) b = rng.uniform(0.0, 1.0) < 0.05 ? 1 : 0;

    for (const int radius : {1, 3, 7, 21}) {
        CAPTURE(radius);
        const Mask got = dilate(m, radius);
        Mask want(64, 64);
        for (int y = 0; y < 64; ++y) {
            for (int x = 0; x < 64; ++x) {
                std::uint8_t v = 0;
                for (int dy = -radius; dy <= radius && !v; ++dy) {
                    for (int dx = -radius; dx <= radius && !v; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx >= 0 && nx < 64 && ny >= 0 && ny < 64) v = m.at(nx, ny);
                    }
                }
                want.at(x, y) = v;
            }
        }
        CHECK(got == want);
    }

    SUBCASE("radius zero is the identity") { CHECK(dilate(m, 0) == m); }
    SUBCASE("square dilations compose additively") {
        CHECK(dilate(dilate(m, 2), 3) == dilate(m, 5));
    }
    SUBCASE("empty masks stay empty") {
        CHECK(dilate(Mask(16, 16), 21).count() == 0);
    }
    SUBCASE("negative radius throws") {
        CHECK_THROWS_AS(dilate(m, -1), InvalidInputError);
    }
}

TEST_CASE("canny traces a vertical split as one single-pixel chain") {
    SemanticMap m = uniform_map(32, 32, 0);
    for (int y = 0; y < 32; ++y) {
        for (int x = 16; x < 32; ++x) m.labels[static_cast<std::size_t>(y) * 32 + x] = 1;
    }
    const ImageU8 edges = canny_from_semantic(m);
    REQUIRE(edges.width == 32);
    REQUIRE(edges.height == 32);
    int column = -1;
    for (int y = 0; y < 32; ++y) {
        int count = 0, where = -1;
        for (int x = 0; x < 32; ++x) {
            if (edges.at(x, y) != 0) {
                ++count;
                where = x;
            }
        }
        CHECK(count == 1);            // exactly one pixel per row
        if (column < 0) column = where;
        CHECK(where == column);       // a straight chain
    }
    CHECK(std::abs(column - 16) <= 1); // on the boundary
}

TEST_CASE("canny output is invariant to label renumbering") {
    SemanticMap a = uniform_map(40, 40, 0);
    for (int y = 10; y < 30; ++y) {
        for (int x = 5; x < 22; ++x) a.labels[static_cast<std::size_t>(y) * 40 + x] = 1;
    }
    SemanticMap b = a;
    for (auto& l : b.labels) l = (l == 0) ? 6 : 3; // permute ids, same geometry
    CHECK(canny_from_semantic(a) == canny_from_semantic(b));
}

TEST_CASE("canny rings an island and stays near the true boundary") {
    SemanticMap m = uniform_map(48, 48, 0);
    for (int y = 12; y < 36; ++y) {
        for (int x = 12; x < 36; ++x) m.labels[static_cast<std::size_t>(y) * 48 + x] = 2;
    }
    const ImageU8 edges = canny_from_semantic(m);

    long total = 0;
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) {
            if (edges.at(x, y) == 0) continue;
            ++total;
            // Distance to the ideal boundary of the island (pixel-edge at
            // 11.5 / 35.5 along each axis) must stay within 2 px.
            const double dx = std::max({11.5 - x, x - 35.5, 0.0});
            const double dy = std::max({11.5 - y, y - 35.5, 0.0});
            const double outside = std::hypot(dx, dy);
            const double inside =
                std::min(std::min(x - 11.5, 35.5 - x), std::min(y - 11.5, 35.5 - y));
            const double dist = outside > 0.0 ? outside : std::max(inside, 0.0);
            CHECK(dist <= 2.0);
            // Part of a chain: a ring pixel has at least two edge neighbours.
            int neighbours = 0;
            for (int ny = y - 1; ny <= y + 1; ++ny) {
                for (int nx = x - 1; nx <= x + 1; ++nx) {
                    if (nx == x && ny == y) continue;
                    if (edges.contains(nx, ny) && edges.at(nx, ny) != 0) ++neighbours;
                }
            }
            CHECK(neighbours >= 2);
        }
    }
    // A 24x24 island needs roughly its perimeter's worth of edge pixels.
    CHECK(total >= 4 * 24 - 8);
    CHECK(total <= 2 * 4 * 24);

    SUBCASE("uniform maps have no edges") {
        const ImageU8 none = canny_from_semantic(uniform_map(32, 32, 1));
        CHECK(std::all_of(none.data.begin(), none.data.end(),
                          [](std::uint8_t v) { return v == 0; }));
    }
    SUBCASE("threshold ordering is validated") {
        CHECK_THROWS_AS(canny_from_semantic(m, 150.0, 50.0), InvalidInputError);
        CHECK_THROWS_AS(canny_from_semantic(m, -1.0, 50.0), InvalidInputError);
    }
}

TEST_CASE("face alignment quad follows the landmark geometry") {
    // Eyes level at y = 50, mouth straight below: axes align with the pixel
    // grid. e2e = (20, 0), e2m = (0, 20) -> x = (40, 0) scaled by
    // max(2*20, 1.8*20) = 40, c = (50, 52).
    const FaceLandmarks lm{{40.0, 50.0}, {60.0, 50.0}, {50.0, 70.0}};
    const auto quad = face_align_quad(lm);
    CHECK((quad[0] - Eigen::Vector2d(10.0, 12.0)).norm() < 1e-12);
    CHECK((quad[1] - Eigen::Vector2d(10.0, 92.0)).norm() < 1e-12);
    CHECK((quad[2] - Eigen::Vector2d(90.0, 92.0)).norm() < 1e-12);
    CHECK((quad[3] - Eigen::Vector2d(90.0, 12.0)).norm() < 1e-12);

    SUBCASE("projection maps the quad centre to the crop centre") {
        const Eigen::Vector2d p = face_align_project(lm, 512, {50.0, 52.0});
        CHECK(p.x() == doctest::Approx(255.5).epsilon(1e-12));
        CHECK(p.y() == doctest::Approx(255.5).epsilon(1e-12));
    }
    SUBCASE("corners map to the crop corners") {
        const Eigen::Vector2d tl = face_align_project(lm, 100, quad[0]);
        const Eigen::Vector2d br = face_align_project(lm, 100, quad[2]);
        CHECK(tl.x() == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(tl.y() == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(br.x() == doctest::Approx(99.5).epsilon(1e-12));
        CHECK(br.y() == doctest::Approx(99.5).epsilon(1e-12));
    }
}

TEST_CASE("axis-aligned face crops resample the source directly") {
    const FaceLandmarks lm{{40.0, 50.0}, {60.0, 50.0}, {50.0, 70.0}};
    ImageU8 img(128, 128, 3);
    for (int y = 0; y < 128; ++y) {
        for (int x = 0; x < 128; ++x) {
            img.at(x, y, 0) = static_cast<std::uint8_t>(x * 2);
            img.at(x, y, 1) = static_cast<std::uint8_t>(y * 2);
            img.at(x, y, 2) = static_cast<std::uint8_t>((x + y) % 256);
        }
    }
    // Quad spans [10, 90)^2 shifted by 2 in y; out_size 80 gives unit scale:
    // output pixel (i, j) samples source (10.5 + i, 12.5 + j).
    const ImageU8 out = align_face(img, lm, 80);
    REQUIRE(out.width == 80);
    REQUIRE(out.height == 80);
    std::uint8_t px[3];
    const std::uint8_t fill[3] = {0, 0, 0};
    for (int j = 0; j < 80; j += 7) {
        for (int i = 0; i < 80; i += 7) {
            sample(img, 10.5 + i, 12.5 + j, Interp::Bilinear, fill, px);
            for (int c = 0; c < 3; ++c) CHECK(out.at(i, j, c) == px[c]);
        }
    }
}

TEST_CASE("face alignment is equivariant under rotation") {
    ImageU8 img(160, 160, 3);
    for (int y = 0; y < 160; ++y) {
        for (int x = 0; x < 160; ++x) {
            img.at(x, y, 0) = static_cast<std::uint8_t>(
                127.5 + 100.0 * std::sin(x * 0.09) * std::cos(y * 0.06));
            img.at(x, y, 1) = static_cast<std::uint8_t>(x * 255 / 159);
            img.at(x, y, 2) = static_cast<std::uint8_t>(y * 255 / 159);
        }
    }
    const FaceLandmarks lm{{65.0, 75.0}, {95.0, 75.0}, {80.0, 103.0}};

    // Rotate image and landmarks by 15 degrees about the image centre.
    const double th = 15.0 * M_PI / 180.0;
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot(0, 0) = std::cos(th);
    rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th);
    rot(1, 1) = std::cos(th);
    const Eigen::Vector2d centre(79.5, 79.5);
    Eigen::Matrix3d shift_in = Eigen::Matrix3d::Identity(), shift_out = shift_in;
    shift_in(0, 2) = -centre.x();
    shift_in(1, 2) = -centre.y();
    shift_out(0, 2) = centre.x();
    shift_out(1, 2) = centre.y();
    const Eigen::Matrix3d full = shift_out * rot * shift_in;

    auto map_point = [&](const Eigen::Vector2d& p) {
        const Eigen::Vector3d q = full * Eigen::Vector3d(p.x(), p.y(), 1.0);
        return Eigen::Vector2d(q.x() / q.z(), q.y() / q.z());
    };
    const FaceLandmarks lm_rot{map_point(lm.eye_left), map_point(lm.eye_right),
                               map_point(lm.mouth_avg)};
    const ImageU8 img_rot = warp_image(img, Homography::from_matrix(full), 160, 160);

    const int out = 96;
    const ImageU8 a = align_face(img, lm, out);
    const ImageU8 b = align_face(img_rot, lm_rot, out);

    double sq_sum = 0.0;
    long count = 0;
    for (int y = 8; y < out - 8; ++y) {
        for (int x = 8; x < out - 8; ++x) {
            for (int c = 0; c < 3; ++c) {
                const double d = double(a.at(x, y, c)) - double(b.at(x, y, c));
                sq_sum += d * d;
                ++count;
            }
        }
    }
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / std::max(sq_sum / count, 1e-12));
    CHECK(psnr > 30.0);

    // The landmarks land on the same canonical crop positions either way.
    const Eigen::Vector2d eye_a = face_align_project(lm, out, lm.eye_left);
    const Eigen::Vector2d eye_b = face_align_project(lm_rot, out, lm_rot.eye_left);
    CHECK((eye_a - eye_b).norm() < 1.0);
    const Eigen::Vector2d mouth_a = face_align_project(lm, out, lm.mouth_avg);
    const Eigen::Vector2d mouth_b = face_align_project(lm_rot, out, lm_rot.mouth_avg);
    CHECK((mouth_a - mouth_b).norm() < 1.0);
}

TEST_CASE("degenerate face landmarks are rejected") {
    const Eigen::Vector2d eye(40.0, 50.0);
    CHECK_THROWS_AS(face_align_quad({eye, eye, {50.0, 70.0}}), DegenerateError);
    // Mouth placed so the corrected x axis collapses to zero.
    CHECK_THROWS_AS(face_align_quad({{40.0, 50.0}, {60.0, 50.0}, {50.0, 30.0}}),
                    DegenerateError);
    ImageU8 img(8, 8, 3);
    CHECK_THROWS_AS(align_face(img, {eye, eye, {50.0, 70.0}}, 16), DegenerateError);
    CHECK_THROWS_AS(align_face(img, {{40.0, 50.0}, {60.0, 50.0}, {50.0, 70.0}}, 0),
                    InvalidInputError);
}
