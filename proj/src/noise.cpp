#include "eggd/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace eggd {

NoiseSpec NoiseSpec::with_sigma(double sigma, RandomSeed seed) {
  return NoiseSpec{sigma, std::nullopt, seed};
}

NoiseSpec NoiseSpec::with_zeta(double zeta_percent, RandomSeed seed) {
  return NoiseSpec{std::nullopt, zeta_percent, seed};
}

void NoiseSpec::validate() const {
  if (sigma.has_value() == zeta_target.has_value()) {
    throw InvalidParameter("specify exactly one of sigma or zeta");
  }
  if (sigma && !(std::isfinite(*sigma) && *sigma > 0.0)) {
    throw InvalidParameter("sigma must be positive, got " + std::to_string(*sigma));
  }
  if (zeta_target && !(*zeta_target > 0.0 && *zeta_target < 100.0)) {
    throw InvalidParameter("zeta must lie in (0, 100), got " + std::to_string(*zeta_target));
  }
}

namespace {

template <std::size_t N>
double zeta_of(const std::array<const Channel*, N>& clean,
               const std::array<const Channel*, N>& noisy) {
  double residual = 0.0;
  double norm = 0.0;
  for (std::size_t ch = 0; ch < N; ++ch) {
    if (clean[ch]->side() != noisy[ch]->side()) throw InvalidArgument("images differ in size");
    const auto c = clean[ch]->data();
    const auto u = noisy[ch]->data();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double d = u[i] - c[i];
      residual += d * d;
      norm += c[i] * c[i];
    }
  }
  if (norm == 0.0) throw InvalidInput("relative noise is undefined for an all-zero clean image");
  return 100.0 * std::sqrt(residual) / std::sqrt(norm);
}

template <std::size_t N>
void draw_into(const std::array<const Channel*, N>& clean, const std::array<Channel*, N>& out,
               double sigma, RandomSeed seed) {
  std::mt19937_64 engine(seed.value);
  std::normal_distribution<double> gaussian(0.0, sigma);
  for (std::size_t ch = 0; ch < N; ++ch) {
    const auto c = clean[ch]->data();
    auto u = out[ch]->data();
    for (std::size_t i = 0; i < c.size(); ++i) {
      u[i] = std::clamp(c[i] + gaussian(engine), 0.0, 255.0);
    }
  }
}

template <typename Image, std::size_t N, typename Channels>
NoisyImage<Image> add_noise(const Image& image, const NoiseSpec& spec, Channels channels_of) {
  spec.validate();
  const std::array<const Channel*, N> clean = channels_of(image);
  NoisyImage<Image> result{image, 0.0, 0.0, 0};
  const std::array<Channel*, N> out = channels_of(result.image);
  std::array<const Channel*, N> out_view{};
  std::copy(out.begin(), out.end(), out_view.begin());

  if (spec.sigma) {
    draw_into(clean, out, *spec.sigma, spec.seed);
    result.sigma = *spec.sigma;
    result.zeta = zeta_of(clean, out_view);
    result.probes = 1;
    return result;
  }

  double energy = 0.0;
  std::size_t count = 0;
  for (const Channel* c : clean) {
    for (double v : c->data()) energy += v * v;
    count += c->size();
  }
  if (energy == 0.0) throw InvalidInput("relative noise is undefined for an all-zero clean image");

  const double target = *spec.zeta_target;
  auto within = [&](double zeta) {
    return std::abs(zeta - target) / target <= kZetaRelativeTolerance;
  };
  auto probe = [&](double sigma) {
    draw_into(clean, out, sigma, spec.seed.derive(static_cast<std::uint64_t>(result.probes)));
    ++result.probes;
    result.sigma = sigma;
    result.zeta = zeta_of(clean, out_view);
    return result.zeta;
  };

  // First guess: E[zeta] ~= 100 sigma / rms without clamping.
  const double rms = std::sqrt(energy / double(count));
  double lo = 0.0;
  double hi = target / 100.0 * rms;
  constexpr double kSigmaCeiling = 1e6;
  while (result.probes < kMaxZetaProbes) {
    const double zeta = probe(hi);
    if (within(zeta)) return result;
    if (zeta > target) break;
    lo = hi;
    hi *= 2.0;
    if (hi > kSigmaCeiling) break;
  }
  while (result.probes < kMaxZetaProbes && hi <= kSigmaCeiling) {
    const double mid = 0.5 * (lo + hi);
    const double zeta = probe(mid);
    if (within(zeta)) return result;
    (zeta < target ? lo : hi) = mid;
  }
  throw ConvergenceError("could not reach zeta = " + std::to_string(target) + "% within " +
                         std::to_string(kMaxZetaProbes) + " noise draws (last: " +
                         std::to_string(result.zeta) + "% at sigma " +
                         std::to_string(result.sigma) + ")");
}

}  // namespace

NoisyImage<Channel> add_gaussian_noise(const Channel& image, const NoiseSpec& spec) {
  return add_noise<Channel, 1>(image, spec, [](auto& c) {
    using Ptr = std::conditional_t<std::is_const_v<std::remove_reference_t<decltype(c)>>,
                                   const Channel*, Channel*>;
    return std::array<Ptr, 1>{&c};
  });
}

NoisyImage<RgbImage> add_gaussian_noise(const RgbImage& image, const NoiseSpec& spec) {
  return add_noise<RgbImage, 3>(image, spec, [](auto& img) { return img.channels(); });
}

double measure_zeta(const Channel& clean, const Channel& noisy) {
  return zeta_of(std::array<const Channel*, 1>{&clean}, std::array<const Channel*, 1>{&noisy});
}

double measure_zeta(const RgbImage& clean, const RgbImage& noisy) {
  return zeta_of(clean.channels(), noisy.channels());
}

}  // namespace eggd
