#pragma once

#include <array>

#include "eggd/common.hpp"
#include "eggd/denoiser.hpp"
#include "eggd/image.hpp"

namespace eggd {

/// Luminance and the two chrominance channels, each on [0, 255].
struct YcbcrImage {
  Channel y;
  Channel cb;
  Channel cr;

  [[nodiscard]] int side() const { return y.side(); }
  friend bool operator==(const YcbcrImage&, const YcbcrImage&) = default;
};

using Color = std::array<double, 3>;

/// Per-pixel transforms without clamping. The two matrices are rounded to
/// three decimals and are only approximate inverses of each other.
[[nodiscard]] Color rgb_to_ycbcr(const Color& rgb);
[[nodiscard]] Color ycbcr_to_rgb(const Color& ycbcr);

/// Whole-image transforms, clamped to [0, 255].
[[nodiscard]] YcbcrImage rgb_to_ycbcr(const RgbImage& image);
[[nodiscard]] RgbImage ycbcr_to_rgb(const YcbcrImage& image);

/// Named per-channel parameters; avoids any positional Y/Cb/Cr ambiguity.
struct ParamTriplet {
  ChannelParams y;
  ChannelParams cb;
  ChannelParams cr;

  friend bool operator==(const ParamTriplet&, const ParamTriplet&) = default;
};

struct ColorDiagnostics {
  ChannelDiagnostics y;
  ChannelDiagnostics cb;
  ChannelDiagnostics cr;
};

/// Channel seeds used by the three-channel pipeline: seed+1, +2, +3.
[[nodiscard]] RandomSeed luma_seed(RandomSeed seed);
[[nodiscard]] RandomSeed blue_chroma_seed(RandomSeed seed);
[[nodiscard]] RandomSeed red_chroma_seed(RandomSeed seed);

/// Denoises Y, Cb and Cr independently.
[[nodiscard]] YcbcrImage denoise_ycbcr(const YcbcrImage& image, const ParamTriplet& params,
                                       RandomSeed seed, Index oversample = kDefaultOversample,
                                       ColorDiagnostics* diagnostics = nullptr);

/// RGB -> YCbCr, per-channel denoising, YCbCr -> RGB.
[[nodiscard]] RgbImage denoise_rgb(const RgbImage& image, const ParamTriplet& params,
                                   RandomSeed seed, Index oversample = kDefaultOversample,
                                   ColorDiagnostics* diagnostics = nullptr);

}  // namespace eggd
