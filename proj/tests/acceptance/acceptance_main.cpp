// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eggd/app/bench.hpp"
#include "eggd/app/fixtures.hpp"
#include "eggd/app/png_io.hpp"
#include "eggd/colorspace.hpp"
#include "eggd/denoiser.hpp"
#include "eggd/linalg.hpp"
#include "eggd/metrics.hpp"
#include "eggd/noise.hpp"
#include "eggd/patch_graph.hpp"
#include "test_support.hpp"

namespace {

using namespace eggd;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr int kFixtureSide = 64;
constexpr std::uint64_t kFixtureSeed = 7;
constexpr std::uint64_t kBenchSeed = 1;

std::vector<app::NamedImage> fixture_set() {
  std::vector<app::NamedImage> out;
  for (const std::string& name : app::fixture_names()) {
    out.push_back({name, app::make_fixture(name, kFixtureSide, RandomSeed{kFixtureSeed})});
  }
  return out;
}

// 1
Outcome gramian_centering() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<Index> size(10, 200);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = size(rng);
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
    }
    const Matrix g = double_center(d).values;
    const double worst = std::max(g.rowwise().sum().cwiseAbs().maxCoeff(),
                                  g.colwise().sum().cwiseAbs().maxCoeff());
    worst_ratio = std::max(worst_ratio, worst / (1e-6 * double(n)));
  }
  const double t = seconds_since(start);
  return {worst_ratio <= 1.0 && t < 5.0,
          fmt("worst |sum| / (1e-6 N) = %.3g, %.2f s (limit 5 s)", worst_ratio, t)};
}

// 2
Outcome shortest_paths() {
  const auto start = Clock::now();
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<Index> size(2, 100);
  int exact_failures = 0;
  double real_worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool integer = trial % 2 == 0;
    const Index n = size(rng);
    std::uniform_int_distribution<Index> extra(0, 3 * n);
    const PatchGraph g = testing::random_connected_graph(n, extra(rng), integer, rng);
    const Matrix dijkstra = geodesic_distances(g).distances;
    const Matrix floyd = testing::floyd_warshall(g);
    if (integer) {
      exact_failures += dijkstra != floyd;
    } else {
      real_worst = std::max(real_worst, (dijkstra - floyd).cwiseAbs().maxCoeff());
    }
  }
  const double t = seconds_since(start);
  return {exact_failures == 0 && real_worst <= 1e-9 && t < 10.0,
          fmt("integer mismatches %d/50, real max diff %.3g (tol 1e-9), %.2f s (limit 10 s)",
              exact_failures, real_worst, t)};
}

// 3
Outcome rsvd_fidelity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(103);
  double worst_sigma = 0.0;
  double worst_recon = 0.0;
  int nondeterministic = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Index r = 1 + trial % 10;
    const Matrix a = testing::random_matrix(200, r, rng) * testing::random_matrix(r, 200, rng);
    const SingularTriplets oracle = exact_svd(a);
    const RandomSeed seed{1000ULL + trial};
    const SingularTriplets s = rsvd(a, r, 10, seed);
    for (Index i = 0; i < r; ++i) {
      worst_sigma = std::max(worst_sigma, std::abs(s.values(i) - oracle.values(i)) / oracle.values(i));
    }
    const Matrix back = s.left * s.values.asDiagonal() * s.right.transpose();
    worst_recon = std::max(worst_recon, (back - a).norm() / a.norm());
    const SingularTriplets again = rsvd(a, r, 10, seed);
    nondeterministic += !(again.values == s.values && again.left == s.left && again.right == s.right);
  }
  const double t = seconds_since(start);
  return {worst_sigma <= 1e-8 && worst_recon <= 1e-8 && nondeterministic == 0 && t < 30.0,
          fmt("sigma rel err %.3g, reconstruction rel err %.3g (tol 1e-8), repeat mismatches %d, "
              "%.2f s (limit 30 s)",
              worst_sigma, worst_recon, nondeterministic, t)};
}

// 4
Outcome projection_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(104);
  const Channel c = testing::random_channel(8, rng);
  const Channel out = denoise_channel(c, ChannelParams{5, 20, 64}, RandomSeed{4});
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, std::abs(out.data()[i] - c.data()[i]));
  const double t = seconds_since(start);
  return {worst <= 1e-4 && t < 10.0,
          fmt("max abs pixel error %.3g (tol 1e-4), %.2f s (limit 10 s)", worst, t)};
}

// 5
Outcome patch_round_trip() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int side : {16, 33, 48, 64}) {
    for (int rho : {3, 5, 7}) {
      const Channel c = testing::random_channel(side, rng);
      const Channel back = merge_patches(extract_patches(c, rho));
      for (std::size_t i = 0; i < c.size(); ++i) {
        worst = std::max(worst, std::abs(back.data()[i] - c.data()[i]));
      }
    }
  }
  return {worst <= 1e-10, fmt("max abs error %.3g over sides 16-64, rho 3/5/7 (tol 1e-10)", worst)};
}

// 6
Outcome color_round_trip() {
  auto round_trip_error = [](const Color& c) {
    Color y = rgb_to_ycbcr(c);
    for (double& v : y) v = std::clamp(v, 0.0, 255.0);
    Color back = ycbcr_to_rgb(y);
    double e = 0.0;
    for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(std::clamp(back[k], 0.0, 255.0) - c[k]));
    return e;
  };
  double worst = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    worst = std::max(worst, round_trip_error(Color{mask & 1 ? 255.0 : 0.0, mask & 2 ? 255.0 : 0.0,
                                                    mask & 4 ? 255.0 : 0.0}));
  }
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  for (int i = 0; i < 10000; ++i) worst = std::max(worst, round_trip_error(Color{u(rng), u(rng), u(rng)}));
  const bool black_exact = rgb_to_ycbcr(Color{0, 0, 0}) == Color{0, 128, 128} &&
                           ycbcr_to_rgb(Color{0, 128, 128}) == Color{0, 0, 0};
  return {worst <= 2.0 && black_exact,
          fmt("max abs error %.4f levels (tol 2.0), black exact: %s", worst,
              black_exact ? "yes" : "no")};
}

// 7
Outcome metrics_oracles() {
  std::mt19937_64 rng(107);
  double self_ssim = 0.0;
  double worst_oracle = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Channel a = testing::random_channel(32, rng);
    const Channel b = testing::random_channel(32, rng, 30.0, 220.0);
    self_ssim = std::max(self_ssim, std::abs(ssim(a, a) - 1.0));
    std::vector<double> values(a.data().begin(), a.data().end());
    const double r = testing::rmse_oracle(a, b);
    worst_oracle = std::max({worst_oracle, std::abs(ssim(a, b) - testing::ssim_oracle(a, b)),
                             std::abs(rmse(a, b) - r),
                             std::abs(psnr(a, b) - 20.0 * std::log10(255.0 / r)),
                             std::abs(shannon_entropy(a) - testing::entropy_oracle(values))});
  }
  std::vector<double> levels(256);
  for (int i = 0; i < 256; ++i) levels[i] = i;
  const double uniform = shannon_entropy(Channel::from_values(16, 16, levels));
  const double forty = std::abs(psnr_from_rmse(2.55) - 40.0);
  return {self_ssim <= 1e-12 && uniform == 8.0 && forty <= 1e-9 && worst_oracle <= 1e-10,
          fmt("|ssim(a,a)-1| %.3g, uniform entropy %.17g, |psnr(2.55)-40| %.3g, "
              "oracle max diff %.3g (tol 1e-10)",
              self_ssim, uniform, forty, worst_oracle)};
}

// 8
Outcome noise_targeting(const std::vector<app::NamedImage>& fixtures) {
  double worst = 0.0;
  for (const app::NamedImage& f : fixtures) {
    for (double target : {2.0, 4.0, 6.0}) {
      const auto noisy = add_gaussian_noise(std::get<RgbImage>(f.image),
                                            NoiseSpec::with_zeta(target, RandomSeed{108}));
      worst = std::max(worst, std::abs(noisy.zeta - target) / target);
    }
  }
  return {worst <= 0.05, fmt("worst relative zeta error %.4f (tol 0.05)", worst)};
}

// 9 and 10 share one bench run.
struct BenchOutcome {
  Outcome improvement;
  Outcome monotone;
};

BenchOutcome denoising_bench(const std::vector<app::NamedImage>& fixtures) {
  const auto start = Clock::now();
  app::BenchOptions options;
  options.seed = RandomSeed{kBenchSeed};
  const std::vector<app::BenchResult> rows = app::run_bench(fixtures, options);
  const double t = seconds_since(start);

  std::map<std::pair<std::string, double>, std::pair<app::BenchResult, app::BenchResult>> cells;
  for (const app::BenchResult& r : rows) {
    auto& cell = cells[{r.image, r.zeta}];
    (r.method == "noisy" ? cell.first : cell.second) = r;
  }
  bool improved = true;
  double min_psnr_gain = 1e300;
  double min_ssim_gain = 1e300;
  for (const auto& [key, cell] : cells) {
    const double dp = cell.second.psnr - cell.first.psnr;
    const double ds = cell.second.ssim - cell.first.ssim;
    std::cout << "  " << key.first << " zeta=" << key.second
              << fmt(": PSNR %.2f -> %.2f dB, SSIM %.4f -> %.4f", cell.first.psnr,
                     cell.second.psnr, cell.first.ssim, cell.second.ssim)
              << '\n';
    min_psnr_gain = std::min(min_psnr_gain, dp);
    min_ssim_gain = std::min(min_ssim_gain, ds);
    improved = improved && dp >= 3.0 && ds >= 0.05;
  }
  BenchOutcome out;
  out.improvement = {improved && cells.size() == 12 && t <= 900.0,
                     fmt("min PSNR gain %.2f dB (need 3), min SSIM gain %.4f (need 0.05), "
                         "%zu cells, bench %.0f s (limit 900 s)",
                         min_psnr_gain, min_ssim_gain, cells.size(), t)};

  int inversions = 0;
  double worst_inversion = 0.0;
  for (const app::NamedImage& f : fixtures) {
    const double p2 = cells.at({f.name, 2.0}).second.psnr;
    const double p4 = cells.at({f.name, 4.0}).second.psnr;
    const double p6 = cells.at({f.name, 6.0}).second.psnr;
    for (double drop : {p4 - p2, p6 - p4}) {
      if (drop > 0.0) {
        ++inversions;
        worst_inversion = std::max(worst_inversion, drop);
      }
    }
  }
  out.monotone = {inversions == 0 || (inversions == 1 && worst_inversion <= 0.3),
                  fmt("%d inversion(s), largest %.3f dB (allowed: one of at most 0.3 dB)",
                      inversions, worst_inversion)};
  return out;
}

// 11
Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "eggd_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path clean = dir / "clean.png";
  const fs::path noisy = dir / "noisy.png";
  app::write_png(clean, app::make_fixture("texture", 24, RandomSeed{kFixtureSeed}));
  const RgbImage clean_img = std::get<RgbImage>(app::read_png(clean));
  app::write_png(noisy, add_gaussian_noise(clean_img, NoiseSpec::with_zeta(4.0, RandomSeed{11})).image);

  auto run = [&](int threads, const std::string& name) {
    const fs::path out = dir / name;
    const std::string cmd = "EGGD_THREADS=" + std::to_string(threads) + " '" + EGGD_CLI_PATH +
                            "' denoise --input '" + noisy.string() + "' --output '" + out.string() +
                            "' --y 5,20,80 --cb 7,20,80 --cr 7,20,80 --seed 3 > /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out, std::ios::binary);
    return std::pair{status, std::string(std::istreambuf_iterator<char>(in), {})};
  };
  const auto a = run(1, "a.png");
  const auto b = run(1, "b.png");
  const auto c = run(4, "c.png");
  fs::remove_all(dir);
  const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && !a.second.empty() &&
                  a.second == b.second && a.second == c.second;
  return {ok, fmt("exit codes %d/%d/%d, %zu bytes, repeat identical: %s, 1 vs 4 threads identical: %s",
                  a.first, b.first, c.first, a.second.size(), a.second == b.second ? "yes" : "no",
                  a.second == c.second ? "yes" : "no")};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << o.detail
              << std::endl;
    failures += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "Gramian centering", guarded(gramian_centering));
  report(2, "Shortest-path oracle", guarded(shortest_paths));
  report(3, "RSVD fidelity", guarded(rsvd_fidelity));
  report(4, "Projection identity", guarded(projection_identity));
  report(5, "Patch round trip", guarded(patch_round_trip));
  report(6, "Color round trip", guarded(color_round_trip));
  report(7, "Metrics", guarded(metrics_oracles));

  const auto fixtures = fixture_set();
  report(8, "Noise targeting", guarded([&] { return noise_targeting(fixtures); }));

  BenchOutcome bench;
  try {
    bench = denoising_bench(fixtures);
  } catch (const std::exception& e) {
    bench.improvement = bench.monotone = Outcome{false, std::string("exception: ") + e.what()};
  }
  report(9, "Denoising improvement", bench.improvement);
  report(10, "Monotone degradation", bench.monotone);
  report(11, "Determinism", guarded(cli_determinism));

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
