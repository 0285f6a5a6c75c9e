#pragma once
// Nearest Centroid classification: the exact classical rule as reference and
// the quantum rule driven by shot-sampled distance estimates. Fitting is
// classical in both cases; centroid angle trees are compiled once.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnc/angles.hpp"
#include "qnc/dataset.hpp"
#include "qnc/distance.hpp"

namespace qnc {

struct CentroidModel {
  std::vector<std::string> class_labels;  // sorted unique training labels
  std::vector<DataVector> centroids;      // class means, padded to a power of two
  // Compiled loader parameters per centroid; empty for an all-zero centroid,
  // which has no loader circuit (the classical rule still applies).
  std::vector<std::optional<AngleTree>> trees;

  std::size_t num_classes() const { return class_labels.size(); }
  std::size_t dimension() const { return centroids.empty() ? 0 : centroids.front().dimension(); }
};

// Class means over the training set; throws on an empty class or empty set.
CentroidModel fit(const Dataset& train);

struct PredictionReport {
  std::vector<std::string> class_labels;
  // Assigned class index per point; empty on mitigation starvation.
  std::vector<std::optional<std::size_t>> assigned;
  // Per point, per centroid distance estimates (exact values on the classical
  // and exact-probability paths).
  std::vector<std::vector<DistanceEstimate>> distances;
  std::size_t unclassified = 0;

  // Fraction of classifiable points whose label matches the reference labels
  // (when reference labels were supplied).
  std::optional<double> accuracy;
  // Quantum runs only: fraction matching the classical Nearest Centroid
  // labels on the same model.
  std::optional<double> agreement_with_classical;
  // Rows: reference class, columns: assigned class. Built when reference
  // labels were supplied; unclassified points are excluded.
  std::vector<std::vector<std::size_t>> confusion;

  std::string label_of(std::size_t point) const {
    return assigned[point] ? class_labels[*assigned[point]] : std::string();
  }
};

// Exact Euclidean argmin; ties break toward the lowest class index.
PredictionReport predict_classical(const CentroidModel& model, const Dataset& test);

struct QuantumPredictOptions {
  std::uint64_t shots = 1000;
  NoiseSpec noise;
  bool mitigated = true;
  // Use exact ideal overlap probabilities instead of sampling (the shots ->
  // infinity limit).
  bool exact = false;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: $QNC_THREADS, else hardware concurrency
};

// One distance estimate per (point, centroid) pair, each on its own derived
// RNG stream; points whose mitigated estimate starves are reported
// unclassified and excluded from the metrics.
PredictionReport predict_quantum(const CentroidModel& model, const Dataset& test,
                                 const QuantumPredictOptions& opt);

}  // namespace qnc
