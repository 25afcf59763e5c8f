#pragma once

#include <filesystem>

#include "spatialkit/imgcore.hpp"

namespace spatialkit {

/// Reads a PNG, binary PGM (P5) or binary PPM (P6) file. Color files load as RGB.
ImageBuffer load_image(const std::filesystem::path& path);

/// Writes Gray/Binary images as single-channel and RGB/BGR as RGB. The format
/// follows the extension (.png, .pgm, .ppm).
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

}  // namespace spatialkit
