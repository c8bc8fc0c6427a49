// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "selfiekit/latent.hpp"
#include "selfiekit/semantic_map.hpp"

namespace selfiekit {

/// Soft background-blending parameters: keep the whole foreground latent for
/// the final s·T steps, composite against the background latent before that.
struct BlendConfig {
    double s = 0.4;
    int total_steps = 50; // T
    Mask mask;            // dilated foreground mask M̄ at latent resolution

    void validate() const; // InvalidInputError on s outside [0,1] or T < 1
};

/// Forward noising z_t = α_t·z0 + (1 − α_t)·ε — the convex combination
/// exactly as stated, with the weights taken from the schedule.
LatentGrid forward_diffuse(const LatentGrid& z0, int t, const LatentGrid& eps,
                           const NoiseSchedule& schedule);

/// One latent-blending decision at timestep t (counting down from T):
/// t ≤ s·T returns z_f unchanged; later steps take z_f where mask = 1 and
/// z_b where mask = 0, the mask broadcast across channels.
LatentGrid blend_step(const LatentGrid& z_f, const LatentGrid& z_b, const BlendConfig& cfg,
                      int t);

/// Block-max pooling onto the latent grid: a latent cell is foreground when
/// any mask pixel in its block is.
Mask downsample_mask_to_latent(const Mask& mask, int latent_width, int latent_height);

} // namespace selfiekit
