// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "selfiekit/image.hpp"

namespace selfiekit {

/// Reads an 8-bit PNG. Grayscale stays 1-channel, everything else is
/// converted to 3-channel RGB (palette expanded, alpha stripped against
/// black). 16-bit files are rejected.
ImageU8 read_png(const std::filesystem::path& path);

/// Writes a 1-channel (grayscale) or 3-channel (RGB) 8-bit PNG.
/// Output bytes are deterministic for identical pixel data.
void write_png(const std::filesystem::path& path, const ImageU8& img);

} // namespace selfiekit
