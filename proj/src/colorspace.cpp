#include "eggd/colorspace.hpp"

#include <algorithm>

namespace eggd {

namespace {

constexpr double kForward[3][3] = {
    {0.299, 0.587, 0.114},
    {-0.169, -0.331, 0.500},
    {0.500, -0.419, -0.081},
};
constexpr double kForwardOffset[3] = {0.0, 128.0, 128.0};

// Applied to (Y, Cb - 128, Cr - 128).
constexpr double kInverse[3][3] = {
    {1.000, 0.000, 1.400},
    {1.000, -0.343, -0.711},
    {1.000, 1.765, 0.000},
};

template <typename Fn>
std::array<Channel, 3> map_pixels(const Channel& c0, const Channel& c1, const Channel& c2, Fn fn) {
  if (c0.side() != c1.side() || c0.side() != c2.side()) {
    throw InvalidArgument("channels differ in size");
  }
  const int n = c0.side();
  std::array<Channel, 3> out{Channel(n), Channel(n), Channel(n)};
  const auto a = c0.data();
  const auto b = c1.data();
  const auto c = c2.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Color v = fn(Color{a[i], b[i], c[i]});
    for (int ch = 0; ch < 3; ++ch) out[ch].data()[i] = std::clamp(v[ch], 0.0, 255.0);
  }
  return out;
}

}  // namespace

Color rgb_to_ycbcr(const Color& rgb) {
  Color out{};
  for (int r = 0; r < 3; ++r) {
    out[r] = kForwardOffset[r] + kForward[r][0] * rgb[0] + kForward[r][1] * rgb[1] +
             kForward[r][2] * rgb[2];
  }
  return out;
}

Color ycbcr_to_rgb(const Color& ycbcr) {
  const Color centered{ycbcr[0], ycbcr[1] - 128.0, ycbcr[2] - 128.0};
  Color out{};
  for (int r = 0; r < 3; ++r) {
    out[r] = kInverse[r][0] * centered[0] + kInverse[r][1] * centered[1] +
             kInverse[r][2] * centered[2];
  }
  return out;
}

YcbcrImage rgb_to_ycbcr(const RgbImage& image) {
  auto [y, cb, cr] =
      map_pixels(image.r, image.g, image.b, [](const Color& c) { return rgb_to_ycbcr(c); });
  return YcbcrImage{std::move(y), std::move(cb), std::move(cr)};
}

RgbImage ycbcr_to_rgb(const YcbcrImage& image) {
  auto [r, g, b] =
      map_pixels(image.y, image.cb, image.cr, [](const Color& c) { return ycbcr_to_rgb(c); });
  return RgbImage{std::move(r), std::move(g), std::move(b)};
}

RandomSeed luma_seed(RandomSeed seed) { return RandomSeed{seed.value + 1}; }
RandomSeed blue_chroma_seed(RandomSeed seed) { return RandomSeed{seed.value + 2}; }
RandomSeed red_chroma_seed(RandomSeed seed) { return RandomSeed{seed.value + 3}; }

YcbcrImage denoise_ycbcr(const YcbcrImage& image, const ParamTriplet& params, RandomSeed seed,
                         Index oversample, ColorDiagnostics* diagnostics) {
  const int n = image.side();
  params.y.validate(n);
  params.cb.validate(n);
  params.cr.validate(n);
  ColorDiagnostics scratch;
  ColorDiagnostics& diag = diagnostics ? *diagnostics : scratch;
  return YcbcrImage{
      denoise_channel(image.y, params.y, luma_seed(seed), oversample, &diag.y),
      denoise_channel(image.cb, params.cb, blue_chroma_seed(seed), oversample, &diag.cb),
      denoise_channel(image.cr, params.cr, red_chroma_seed(seed), oversample, &diag.cr),
  };
}

RgbImage denoise_rgb(const RgbImage& image, const ParamTriplet& params, RandomSeed seed,
                     Index oversample, ColorDiagnostics* diagnostics) {
  return ycbcr_to_rgb(denoise_ycbcr(rgb_to_ycbcr(image), params, seed, oversample, diagnostics));
}

}  // namespace eggd
