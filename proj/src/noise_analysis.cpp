#include "qnc/noise_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qnc {

double predict_postselected_overlap(double a1_sq, std::size_t n, double p) {
  if (p <= 0.0 || p > 1.0)
    throw std::invalid_argument("predict_postselected_overlap: p must be in (0, 1]");
  if (a1_sq < 0.0 || a1_sq > 1.0)
    throw std::invalid_argument("predict_postselected_overlap: a1_sq must be in [0, 1]");
  const double tail = (1.0 - p) / (std::ldexp(1.0, static_cast<int>(n)) * p);  // (1-p)/(2^n p)
  return (a1_sq + tail) / (1.0 + tail * static_cast<double>(n));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two (x, y) points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 1e-15) throw std::runtime_error("fit_line: degenerate x-spread");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double estimate_fidelity(std::span<const OverlapPair> pairs, std::size_t m) {
  std::vector<double> x, y;
  x.reserve(pairs.size());
  y.reserve(pairs.size());
  for (const OverlapPair& p : pairs) {
    if (p.m != m) throw std::invalid_argument("estimate_fidelity: pairs must share one TQG count");
    x.push_back(p.c_sim);
    y.push_back(p.c_exp);
  }
  const LineFit f = fit_line(x, y);
  if (f.slope <= 0.0) throw std::runtime_error("estimate_fidelity: non-positive slope");
  return std::pow(f.slope, 1.0 / static_cast<double>(m));
}

double mitigation_threshold() { return std::exp2(-1.0 / 4.5); }

double correct_overlap(double c_exp_raw, std::size_t m, double f) {
  if (f <= 0.0 || f > 1.0) throw std::invalid_argument("correct_overlap: f must be in (0, 1]");
  const double p = std::pow(f, static_cast<double>(m));
  return std::clamp(c_exp_raw / p, 0.0, 1.0);
}

}  // namespace qnc
