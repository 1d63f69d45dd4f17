#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tvws::png {

/// Serializes an 8-bit grayscale image as a PNG byte stream. Pixels are
/// row-major, top row first. Uses stored (uncompressed) deflate blocks, so
/// output is byte-stable across platforms and zlib versions.
std::vector<std::uint8_t> encode_grayscale(int width, int height,
                                           const std::vector<std::uint8_t>& pixels);

void write_grayscale(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& pixels);

}  // namespace tvws::png
