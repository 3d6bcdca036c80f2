#pragma once

#include <filesystem>

#include "specden/image.hpp"

namespace specden {

/// Reads an 8-bit PNG or binary PGM/PPM (P5/P6, maxval 255). Samples are
/// divided by 255. Gray+alpha and RGBA PNGs drop the alpha channel.
///
/// Errors: kMissingFile, kUnsupportedFormat (unknown signature, 16-bit,
/// interlaced PNG, palette with unsupported depth), kCorruptHeader.
Image load_image(const std::filesystem::path& path);

/// Writes PNG when the extension is `.png`, PGM/PPM for `.pgm`/`.ppm`/`.pnm`.
/// Samples are clamped to [0,1] and stored as round(v*255).
void save_image(const Image& img, const std::filesystem::path& path);

/// True for extensions load_image understands.
bool is_supported_image(const std::filesystem::path& path);

}  // namespace specden
