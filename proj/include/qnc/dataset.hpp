#pragma once
// Dataset plumbing: the synthetic cluster generator, CSV and IDX ingestion,
// PCA preprocessing, and the nonnegativity shift that restores the
// positive-inner-product assumption after PCA.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qnc {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Dataset {
  std::vector<std::vector<double>> points;  // one feature row per point
  std::vector<std::string> labels;
  nlohmann::json provenance;  // how the data came to be; travels with every output

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }
};

struct SyntheticSpec {
  std::size_t k = 4;         // cluster count
  std::size_t d = 8;         // dimension
  std::size_t n_per = 10;    // points per centroid
  double min_sep = 0.3;      // minimum pairwise centroid distance
  double variance = 0.05;    // per-coordinate Gaussian variance of the cluster noise
  double radius = 1.0;       // ball radius containing centroids (and points, see flag)
  std::uint64_t seed = 0;
  // Alternate readings of the recipe, selectable but off by default:
  bool variance_is_stddev = false;     // treat `variance` as sigma instead of sigma^2
  bool ball_constraint_points = true;  // redraw points that fall outside the ball
  std::size_t rejection_budget = 200000;
};

// Centroids uniform in the ball with pairwise separation >= min_sep (by
// rejection); each point is its centroid plus isotropic Gaussian noise,
// redrawn while outside the ball. Labels are "0".."k-1". Deterministic under
// seed. Throws InfeasibleSpec when the rejection budget runs out.
Dataset generate_synthetic(const SyntheticSpec& spec);

// Generating centroids are recorded in provenance["centroids"].
std::vector<std::vector<double>> synthetic_centroids(const Dataset& ds);

struct PcaModel {
  std::vector<double> mean;
  std::vector<std::vector<double>> axes;  // top-q principal axes, orthonormal rows
  std::vector<double> variances;          // explained variances, nonincreasing
};

// Top-q eigenvectors of the sample covariance. Requires q <= dimension and
// at least q+1 points. Degenerate directions get zero variance.
PcaModel fit_pca(const std::vector<std::vector<double>>& points, std::size_t q);
std::vector<std::vector<double>> apply_pca(const PcaModel& model,
                                           const std::vector<std::vector<double>>& points);
Dataset apply_pca(const PcaModel& model, const Dataset& ds);

// CSV with one header row, numeric feature columns and one label column
// (selected by name). Lines starting with '#' are ignored. Errors name the
// offending row and column.
Dataset load_csv(const std::string& path, const std::string& label_column = "label");
// Writes '#' provenance lines, then a header f0..f{D-1},label.
void save_csv(const Dataset& ds, const std::string& path);

// Standard IDX pair: big-endian magic 0x803 (images) / 0x801 (labels),
// matching counts; pixel bytes scaled to [0, 1].
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

// Subtracts each coordinate's negative minimum so every coordinate is >= 0;
// already-nonnegative coordinates are untouched. The shift is recorded in
// provenance["nonnegativity_shift"].
Dataset nonnegativity_shift(const Dataset& ds);

// Appends zero features up to the next power of two (no-op if already one).
Dataset pad_to_pow2(const Dataset& ds);

}  // namespace qnc
