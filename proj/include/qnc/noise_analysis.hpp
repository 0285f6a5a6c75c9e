#pragma once
// Post-selection analysis of the depolarizing model: predicted post-selected
// overlaps, gate-fidelity estimation from the measured-vs-ideal overlap
// slope, the mitigation threshold, and depolarizing-corrected overlaps.

#include <cstddef>
#include <span>

namespace qnc {

struct OverlapPair {
  double c_sim = 0.0;      // ideal overlap probability
  double c_exp = 0.0;      // measured overlap (raw or mitigated)
  std::size_t n = 0;       // qubits
  std::size_t m = 0;       // native TQG count
  bool mitigated = false;
};

// Overlap read from the post-selected depolarized density matrix:
//   (a1_sq + (1-p)/(2^n p)) / (1 + (1-p) n / (2^n p)).
// Throws for p outside (0, 1].
double predict_postselected_overlap(double a1_sq, std::size_t n, double p);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares with a free intercept. Throws on fewer than two
// points or a degenerate x-spread.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fits c_exp against c_sim over unmitigated pairs sharing one TQG count m and
// returns slope^(1/m). Throws on a non-positive slope.
double estimate_fidelity(std::span<const OverlapPair> pairs, std::size_t m);

// 2^(-1/4.5): the two-qubit fidelity above which post-selection suppresses
// depolarizing error increasingly well as n grows.
double mitigation_threshold();

// c_exp_raw / f^m, clamped to [0, 1].
double correct_overlap(double c_exp_raw, std::size_t m, double f);

}  // namespace qnc
