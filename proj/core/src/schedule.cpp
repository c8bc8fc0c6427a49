// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#include "selfiekit/schedule.hpp"

#include "selfiekit/errors.hpp"

namespace selfiekit {

void BlendConfig::validate() const {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidInputError("blend: s must be in [0,1]");
    if (total_steps < 1) throw InvalidInputError("blend: total_steps must be >= 1");
}

LatentGrid forward_diffuse(const LatentGrid& z0, int t, const LatentGrid& eps,
                           const NoiseSchedule& schedule) {
    z0.validate();
    eps.validate();
    schedule.validate();
    if (!z0.same_shape(eps)) throw InvalidInputError("forward_diffuse: z0/eps shape mismatch");
    if (t < 0 || t > schedule.total_steps) {
        throw InvalidInputError("forward_diffuse: timestep outside [0, T]");
    }
    const double a = schedule.alpha[t];
    LatentGrid zt = z0;
    for (std::size_t i = 0; i < zt.values.size(); ++i) {
        zt.values[i] = a * z0.values[i] + (1.0 - a) * eps.values[i];
    }
    return zt;
}

LatentGrid blend_step(const LatentGrid& z_f, const LatentGrid& z_b, const BlendConfig& cfg,
                      int t) {
    z_f.validate();
    z_b.validate();
    cfg.validate();
    if (!z_f.same_shape(z_b)) throw InvalidInputError("blend_step: latent shape mismatch");
    if (static_cast<double>(t) <= cfg.s * cfg.total_steps) return z_f;

    if (cfg.mask.width != z_f.width || cfg.mask.height != z_f.height) {
        throw InvalidInputError("blend_step: mask does not match latent dimensions");
    }
    LatentGrid out = z_f;
    for (int c = 0; c < out.channels; ++c) {
        for (int y = 0; y < out.height; ++y) {
            for (int x = 0; x < out.width; ++x) {
                if (!cfg.mask.at(x, y)) out.at(c, y, x) = z_b.at(c, y, x);
            }
        }
    }
    return out;
}

Mask downsample_mask_to_latent(const Mask& mask, int latent_width, int latent_height) {
    if (latent_width < 1 || latent_height < 1) {
        throw InvalidInputError("downsample_mask_to_latent: empty latent dims");
    }
    if (latent_width > mask.width || latent_height > mask.height) {
        throw InvalidInputError("downsample_mask_to_latent: latent larger than mask");
    }
    Mask out(latent_width, latent_height);
    for (int ly = 0; ly < latent_height; ++ly) {
        const int y0 = static_cast<int>(static_cast<std::int64_t>(ly) * mask.height / latent_height);
        const int y1 = static_cast<int>(static_cast<std::int64_t>(ly + 1) * mask.height / latent_height);
        for (int lx = 0; lx < latent_width; ++lx) {
            const int x0 = static_cast<int>(static_cast<std::int64_t>(lx) * mask.width / latent_width);
            const int x1 = static_cast<int>(static_cast<std::int64_t>(lx + 1) * mask.width / latent_width);
            std::uint8_t v = 0;
            for (int y = y0; y < y1 && !v; ++y) {
                for (int x = x0; x < x1 && !v; ++x) v = mask.at(x, y);
            }
            out.at(lx, ly) = v;
        }
    }
    return out;
}

} // namespace selfiekit
