#include "eggd/app/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace eggd::app {

namespace {

// Bright, low-contrast scenes (structure of a few intensity levels on a
// light base) with colors as tints around gray.
constexpr double kBase = 200.0;

struct Tint {
  double r;
  double g;
  double b;
};

RgbImage blank(int side) { return RgbImage{Channel(side), Channel(side), Channel(side)}; }

void put(RgbImage& img, int i, int j, double luma, const Tint& tint) {
  img.r(i, j) = std::clamp(luma * tint.r, 0.0, 255.0);
  img.g(i, j) = std::clamp(luma * tint.g, 0.0, 255.0);
  img.b(i, j) = std::clamp(luma * tint.b, 0.0, 255.0);
}

// Rectangles of constant level over a constant background.
RgbImage blocks(int side, std::mt19937_64& rng) {
  RgbImage img = blank(side);
  std::uniform_real_distribution<double> level(kBase - 10.0, kBase + 10.0);
  std::uniform_int_distribution<int> pos(0, side - 1);
  std::vector<double> luma(static_cast<std::size_t>(side) * side, kBase);
  for (int rect = 0; rect < 6; ++rect) {
    const int r0 = pos(rng);
    const int c0 = pos(rng);
    const int h = side / 6 + pos(rng) / 3;
    const int w = side / 6 + pos(rng) / 3;
    const double v = level(rng);
    for (int i = r0; i < std::min(side, r0 + h); ++i) {
      for (int j = c0; j < std::min(side, c0 + w); ++j) luma[std::size_t(i) * side + j] = v;
    }
  }
  const Tint tint{1.05, 1.0, 0.92};
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) put(img, i, j, luma[std::size_t(i) * side + j], tint);
  }
  return img;
}

// Diagonal ramp with a random orientation.
RgbImage gradient(int side, std::mt19937_64& rng) {
  RgbImage img = blank(side);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double a = angle(rng);
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double u = ((i - side / 2.0) * ca + (j - side / 2.0) * sa) / side;
      const double luma = kBase + 24.0 * u;
      put(img, i, j, luma, Tint{0.95 + 0.1 * (0.5 + u), 1.0, 1.05 - 0.1 * (0.5 + u)});
    }
  }
  return img;
}

// Two-level checkerboard, random cell size and phase.
RgbImage checker(int side, std::mt19937_64& rng) {
  RgbImage img = blank(side);
  std::uniform_int_distribution<int> cell_dist(std::max(2, side / 10), std::max(3, side / 5));
  std::uniform_int_distribution<int> phase(0, side);
  const int cell = cell_dist(rng);
  const int pr = phase(rng);
  const int pc = phase(rng);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const bool dark = (((i + pr) / cell) + ((j + pc) / cell)) % 2 == 0;
      put(img, i, j, dark ? kBase - 5.0 : kBase + 5.0, Tint{0.98, 1.0, 1.03});
    }
  }
  return img;
}

// Sum of a few low-frequency sinusoids.
RgbImage texture(int side, std::mt19937_64& rng) {
  RgbImage img = blank(side);
  std::uniform_real_distribution<double> freq(1.0, 4.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Wave {
    double fx, fy, ph, amp;
  };
  std::vector<Wave> waves;
  for (int w = 0; w < 4; ++w) waves.push_back({freq(rng), freq(rng), phase(rng), 7.0 / (w + 1)});
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      double luma = kBase;
      for (const Wave& w : waves) {
        luma += w.amp * std::sin(2.0 * std::numbers::pi * (w.fx * i + w.fy * j) / side + w.ph);
      }
      put(img, i, j, luma, Tint{0.9, 1.0, 1.02});
    }
  }
  return img;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"blocks", "gradient", "checker", "texture"};
  return names;
}

RgbImage make_fixture(std::string_view name, int side, RandomSeed seed) {
  if (side < 4) throw InvalidParameter("fixture side must be >= 4");
  std::mt19937_64 rng(seed.value);
  if (name == "blocks") return blocks(side, rng);
  if (name == "gradient") return gradient(side, rng);
  if (name == "checker") return checker(side, rng);
  if (name == "texture") return texture(side, rng);
  throw InvalidParameter("unknown fixture '" + std::string(name) + "'");
}

}  // namespace eggd::app
