#include "eggd/denoiser.hpp"

#include <charconv>
#include <chrono>
#include <string>

#include "eggd/linalg.hpp"
#include "eggd/patch_graph.hpp"

namespace eggd {

namespace {

constexpr double kNullSingularValue = 1e-10;

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

void ChannelParams::validate(int side) const {
  if (rho < 3 || rho % 2 == 0) {
    throw InvalidParameter("patch length must be odd and >= 3, got " + std::to_string(rho));
  }
  if (delta < 1) throw InvalidParameter("neighbor count must be >= 1");
  if (rank < 1) throw InvalidParameter("rank must be >= 1");
  if (side <= 0) return;
  const long long patches = static_cast<long long>(side) * side;
  if (rho > side) {
    throw InvalidParameter("patch length " + std::to_string(rho) + " exceeds image side " +
                           std::to_string(side));
  }
  if (delta >= patches) {
    throw InvalidParameter("neighbor count " + std::to_string(delta) +
                           " must be below the patch count " + std::to_string(patches));
  }
  if (rank > patches) {
    throw InvalidParameter("rank " + std::to_string(rank) + " exceeds the patch count " +
                           std::to_string(patches));
  }
}

ChannelParams ChannelParams::parse(std::string_view text) {
  int values[3] = {0, 0, 0};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 3; ++i) {
    auto [next, ec] = std::from_chars(p, end, values[i]);
    if (ec != std::errc{} || next == p) {
      throw InvalidParameter("expected rho,delta,rank but got '" + std::string(text) + "'");
    }
    p = next;
    if (i < 2) {
      if (p == end || *p != ',') {
        throw InvalidParameter("expected rho,delta,rank but got '" + std::string(text) + "'");
      }
      ++p;
    }
  }
  if (p != end) throw InvalidParameter("trailing characters in '" + std::string(text) + "'");
  ChannelParams params{values[0], values[1], values[2]};
  params.validate();
  return params;
}

std::string ChannelParams::to_string() const {
  return std::to_string(rho) + "," + std::to_string(delta) + "," + std::to_string(rank);
}

PatchMatrix project_patches(const PatchMatrix& patches, const GramianBasis& basis) {
  if (basis.vectors.rows() != patches.count()) {
    throw InvalidArgument("basis vectors must have one entry per patch");
  }
  const Matrix& v = basis.vectors;
  const Matrix coefficients = v.transpose() * patches.values();
  RowMatrix projected = v * coefficients;
  return PatchMatrix(patches.side(), patches.rho(), std::move(projected));
}

GramianBasis gramian_basis(const PatchMatrix& patches, int delta, int rank, Index oversample,
                           RandomSeed seed, ChannelDiagnostics* diagnostics) {
  ChannelDiagnostics scratch;
  ChannelDiagnostics& diag = diagnostics ? *diagnostics : scratch;
  Stopwatch clock;

  auto connected = ensure_connected(build_knn_graph(patches, delta), patches);
  diag.bridging_edges = connected.edges_added;
  if (connected.edges_added > 0) {
    diag.warnings.push_back("patch graph was disconnected; added " +
                            std::to_string(connected.edges_added) + " bridging edge(s)");
  }
  diag.timings.graph += clock.lap();

  GeodesicMatrix geodesics = geodesic_distances(connected.graph);
  diag.timings.geodesics += clock.lap();

  const Gramian gramian = double_center(std::move(geodesics));
  diag.timings.gramian += clock.lap();

  const SingularTriplets triplets = rsvd(gramian.values, rank, oversample, seed);
  Index keep = 0;
  const double top = triplets.count() > 0 ? triplets.values[0] : 0.0;
  while (keep < triplets.count() && triplets.values[keep] > kNullSingularValue * top) ++keep;
  if (keep < rank) {
    diag.warnings.push_back("requested rank " + std::to_string(rank) + " but the Gramian has " +
                            std::to_string(keep) + " numerically nonzero singular value(s)");
  }
  diag.rank_used = keep;
  diag.timings.rsvd += clock.lap();
  return GramianBasis{triplets.right.leftCols(keep)};
}

Channel denoise_channel(const Channel& noisy, const ChannelParams& params, RandomSeed seed,
                        Index oversample, ChannelDiagnostics* diagnostics) {
  params.validate(noisy.side());
  ChannelDiagnostics scratch;
  ChannelDiagnostics& diag = diagnostics ? *diagnostics : scratch;
  Stopwatch clock;

  PatchMatrix patches = extract_patches(noisy, params.rho);
  diag.timings.patches += clock.lap();

  const GramianBasis basis =
      gramian_basis(patches, params.delta, params.rank, oversample, seed, &diag);
  clock.lap();

  // Project the centered cloud, then restore the mean patch.
  const Eigen::RowVectorXd mean_patch = patches.values().colwise().mean();
  patches.values().rowwise() -= mean_patch;
  PatchMatrix denoised = project_patches(patches, basis);
  denoised.values().rowwise() += mean_patch;
  diag.timings.projection += clock.lap();

  Channel out = merge_patches(denoised);
  out.clamp();
  diag.timings.merge += clock.lap();
  return out;
}

}  // namespace eggd
