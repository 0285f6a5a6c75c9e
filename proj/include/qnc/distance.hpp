#pragma once
// Distance estimation: the merged loader/adjoint-loader circuit and the
// conversion of shot statistics into inner products and Euclidean distances
//   l_xy = sqrt(|x|^2 + |y|^2 - 2 |x| |y| c_xy),  c_xy = <x^, y^>.
// Norms are tracked classically; shots estimate only c^2.

#include <cstdint>

#include "qnc/angles.hpp"
#include "qnc/circuit.hpp"
#include "qnc/simulator.hpp"

namespace qnc {

struct DistanceEstimate {
  double c_hat = 0.0;   // estimated normalized inner product, sqrt(max(p_hat, 0))
  double l_hat = 0.0;   // estimated Euclidean distance (radicand clamped at 0)
  double p_hat = 0.0;   // estimated probability of reading e_1
  std::uint64_t shots_used = 0;
  bool mitigated = false;
};

// loader(x) followed by the adjoint loader of y without its X gate; the two
// leaf layers meet on identical qubit pairs and merge by summing signed
// angles. Exactly 3d/2 - 2 RBS gates, RBS depth 2 log2(d) - 1.
Circuit build_distance_circuit(const AngleTree& tx, const AngleTree& ty);

// Noiseless |<x^, y^>|^2 via the unary simulation of the distance circuit.
double ideal_overlap_probability(const AngleTree& tx, const AngleTree& ty);

struct EstimateOptions {
  std::uint64_t shots = 1000;
  NoiseSpec noise;
  bool mitigated = true;
  ReadoutMode mode = ReadoutMode::FullReadout;
};

// Builds the circuit, samples, and converts. Throws MitigationStarvation when
// the mitigated estimator has no surviving shots.
DistanceEstimate estimate_distance(const DataVector& x, const DataVector& y,
                                   const EstimateOptions& opt, RngStream& rng);

// Same, from precompiled trees and classically tracked norms (the per-point
// and per-centroid one-time cost lives with the caller).
DistanceEstimate estimate_distance_from_trees(const AngleTree& tx, double norm_x,
                                              const AngleTree& ty, double norm_y,
                                              const EstimateOptions& opt, RngStream& rng);

// The l_xy formula with the radicand clamped at zero.
double distance_from_overlap(double norm_x, double norm_y, double c_hat);

}  // namespace qnc
