#include "eggd/app/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstring>
#include <vector>

namespace eggd::app {

namespace {

void write_buffer(const std::filesystem::path& path, int side, bool color,
                  const std::vector<std::uint8_t>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(side);
  image.height = static_cast<png_uint_32>(side);
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot write " + path.string() + ": " + message);
  }
}

}  // namespace

std::uint8_t quantize(double value) {
  const double q = std::floor(value + 0.5);
  if (!(q > 0.0)) return 0;
  if (q >= 255.0) return 255;
  return static_cast<std::uint8_t>(q);
}

Channel quantized(const Channel& image) {
  Channel out = image;
  for (double& v : out.data()) v = quantize(v);
  return out;
}

RgbImage quantized(const RgbImage& image) {
  return RgbImage{quantized(image.r), quantized(image.g), quantized(image.b)};
}

Image read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot read " + path.string() + ": " + message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  // Background for composited alpha.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&image, &background, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot decode " + path.string() + ": " + message);
  }
  if (width != height) {
    throw InvalidInput(path.string() + " is " + std::to_string(width) + "x" +
                       std::to_string(height) + "; only square images are supported");
  }

  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (!color) {
    return Channel::from_values(width, height, std::vector<double>(pixels.begin(), pixels.end()));
  }
  std::vector<double> r(count), g(count), b(count);
  for (std::size_t i = 0; i < count; ++i) {
    r[i] = pixels[3 * i];
    g[i] = pixels[3 * i + 1];
    b[i] = pixels[3 * i + 2];
  }
  return RgbImage::from_channels(Channel::from_values(width, height, std::move(r)),
                                 Channel::from_values(width, height, std::move(g)),
                                 Channel::from_values(width, height, std::move(b)));
}

void write_png(const std::filesystem::path& path, const Channel& image) {
  std::vector<std::uint8_t> pixels(image.size());
  const auto data = image.data();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = quantize(data[i]);
  write_buffer(path, image.side(), false, pixels);
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  const std::size_t count = image.r.size();
  std::vector<std::uint8_t> pixels(3 * count);
  for (std::size_t i = 0; i < count; ++i) {
    pixels[3 * i] = quantize(image.r.data()[i]);
    pixels[3 * i + 1] = quantize(image.g.data()[i]);
    pixels[3 * i + 2] = quantize(image.b.data()[i]);
  }
  write_buffer(path, image.side(), true, pixels);
}

void write_png(const std::filesystem::path& path, const Image& image) {
  std::visit([&](const auto& img) { write_png(path, img); }, image);
}

}  // namespace eggd::app
