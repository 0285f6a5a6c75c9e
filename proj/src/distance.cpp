#include "qnc/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnc {

Circuit build_distance_circuit(const AngleTree& tx, const AngleTree& ty) {
  if (tx.dimension != ty.dimension)
    throw std::invalid_argument("build_distance_circuit: dimension mismatch");
  const std::size_t d = tx.dimension;

  const Circuit lx = build_parallel_loader(tx);
  const Circuit ly_adj = adjoint(build_parallel_loader(ty));
  // lx layers: [X] [L_0 .. L_{k-1}]; ly_adj layers: [L_{k-1}' .. L_0'] [X].
  const std::size_t k = lx.layers().size() - 1;

  Circuit c(d);
  for (std::size_t li = 0; li < k; ++li) c.append_layer(lx.layers()[li]);

  // Leaf layers of both loaders act on the same (2j-1, 2j) pairs; merge each
  // pair of gates into one with the signed-angle sum.
  const auto& leaf_x = lx.layers()[k];
  const auto& leaf_y = ly_adj.layers()[0];
  std::vector<Gate> merged;
  merged.reserve(leaf_x.size());
  for (std::size_t g = 0; g < leaf_x.size(); ++g) {
    const Gate& gx = leaf_x[g];
    const Gate& gy = leaf_y[g];
    if (gx.qubits != gy.qubits)
      throw std::logic_error("build_distance_circuit: leaf layers misaligned");
    merged.push_back(Gate::rbs(gx.qubits[0], gx.qubits[1], gx.angle + gy.angle));
  }
  c.append_layer(std::move(merged));

  for (std::size_t li = 1; li + 1 < ly_adj.layers().size(); ++li)
    c.append_layer(ly_adj.layers()[li]);
  return c;
}

double ideal_overlap_probability(const AngleTree& tx, const AngleTree& ty) {
  const UnaryState st = run_unary(build_distance_circuit(tx, ty));
  return st.amps[0] * st.amps[0];
}

double distance_from_overlap(double norm_x, double norm_y, double c_hat) {
  const double radicand = norm_x * norm_x + norm_y * norm_y - 2.0 * norm_x * norm_y * c_hat;
  return std::sqrt(std::max(radicand, 0.0));
}

DistanceEstimate estimate_distance_from_trees(const AngleTree& tx, double norm_x,
                                              const AngleTree& ty, double norm_y,
                                              const EstimateOptions& opt, RngStream& rng) {
  if (opt.mitigated && opt.mode == ReadoutMode::FirstQubit)
    throw std::invalid_argument("estimate_distance: mitigation needs full readout");

  const Circuit c = build_distance_circuit(tx, ty);
  const ShotRecord rec = sample_shots(c, opt.noise, opt.shots, opt.mode, rng);
  const OverlapEstimate ov = estimate_overlap(rec);

  double p_hat;
  if (opt.mitigated) {
    if (!ov.p_mitigated)
      throw MitigationStarvation("estimate_distance: post-selection discarded every shot");
    p_hat = *ov.p_mitigated;
  } else {
    p_hat = ov.p_raw;
  }

  DistanceEstimate est;
  est.p_hat = p_hat;
  est.c_hat = std::sqrt(std::max(p_hat, 0.0));
  est.l_hat = distance_from_overlap(norm_x, norm_y, est.c_hat);
  est.shots_used = opt.shots;
  est.mitigated = opt.mitigated;
  return est;
}

DistanceEstimate estimate_distance(const DataVector& x, const DataVector& y,
                                   const EstimateOptions& opt, RngStream& rng) {
  if (x.dimension() != y.dimension())
    throw std::invalid_argument("estimate_distance: dimension mismatch");
  return estimate_distance_from_trees(compile_angles(x), x.norm, compile_angles(y), y.norm, opt,
                                      rng);
}

}  // namespace qnc
