// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace selfiekit {

/// Dataset jobs draw from per-item streams seeded with (seed + item index),
/// so outputs do not depend on the parallel schedule.
inline std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(seed + index);
}

/// Unbiased draw from [0, n). Implemented with rejection sampling instead of
/// std::uniform_int_distribution, whose output differs between standard
/// libraries; this keeps frozen test values portable.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Uniform integer in [lo, hi], inclusive.
inline std::int64_t draw_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace selfiekit
