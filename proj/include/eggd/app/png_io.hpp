#pragma once

#include <filesystem>
#include <variant>

#include "eggd/image.hpp"

namespace eggd::app {

/// A decoded image: grayscale files become a Channel, color files an RgbImage.
using Image = std::variant<Channel, RgbImage>;

class IoError : public Error {
 public:
  using Error::Error;
};

/// Reads an 8-bit grayscale or RGB PNG (alpha is composited away, 16-bit
/// input reduced to 8 bits). Throws IoError on unreadable files and
/// InvalidInput for non-square images.
[[nodiscard]] Image read_png(const std::filesystem::path& path);

/// Writes 8-bit PNG; values are rounded half-up and clamped to [0, 255].
void write_png(const std::filesystem::path& path, const Channel& image);
void write_png(const std::filesystem::path& path, const RgbImage& image);
void write_png(const std::filesystem::path& path, const Image& image);

/// Round-half-up then clamp, the quantization used for every 8-bit output.
[[nodiscard]] std::uint8_t quantize(double value);

/// Applies the write-time quantization without touching the disk, so a
/// result can be compared with what a reader of the written file sees.
[[nodiscard]] Channel quantized(const Channel& image);
[[nodiscard]] RgbImage quantized(const RgbImage& image);

}  // namespace eggd::app
