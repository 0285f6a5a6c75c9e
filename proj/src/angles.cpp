#include "qnc/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnc {

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

double safe_arccos(double ratio) {
  return std::acos(std::clamp(ratio, -1.0, 1.0));
}

// Leaf angle for the pair (odd, even): arccos(odd / r), reflected to
// 2*pi - arccos when the even coordinate is negative. Zero treated as the
// positive branch; zero-norm pairs take theta = 0.
double leaf_angle(double odd, double even, double r) {
  if (r <= 0.0) return 0.0;
  const double a = safe_arccos(odd / r);
  return even < 0.0 ? 2.0 * std::numbers::pi - a : a;
}

double internal_angle(double left_child, double r) {
  if (r <= 0.0) return 0.0;
  return safe_arccos(left_child / r);
}

AngleTree zero_tree(std::size_t d) {
  AngleTree t;
  t.dimension = d;
  t.r.assign(d, 0.0);
  t.theta.assign(d, 0.0);
  return t;
}

}  // namespace

DataVector DataVector::from(std::vector<double> values) {
  if (!is_power_of_two(values.size()))
    throw std::invalid_argument("DataVector: length must be a power of two (pad first)");
  double sumsq = 0.0;
  for (double v : values) sumsq += v * v;
  DataVector x;
  x.entries = std::move(values);
  x.norm = std::sqrt(sumsq);
  return x;
}

DataVector DataVector::padded(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("DataVector: empty input");
  std::size_t d = 2;
  while (d < values.size()) d *= 2;
  values.resize(d, 0.0);
  return from(std::move(values));
}

AngleTree compile_angles(const DataVector& x) {
  const std::size_t d = x.dimension();
  if (d < 2 || !is_power_of_two(d))
    throw std::invalid_argument("compile_angles: dimension must be a power of two >= 2");
  if (x.norm == 0.0)
    throw std::invalid_argument("compile_angles: zero vector has no normalized state");

  AngleTree t = zero_tree(d);
  // Leaf level: slot d/2 + j - 1 covers the coordinate pair (2j-1, 2j).
  for (std::size_t j = 1; j <= d / 2; ++j) {
    const double odd = x.entries[2 * j - 2];
    const double even = x.entries[2 * j - 1];
    const std::size_t slot = d / 2 + j - 1;
    t.r[slot] = std::hypot(odd, even);
    t.theta[slot] = leaf_angle(odd, even, t.r[slot]);
  }
  // Internal levels, children before parents.
  for (std::size_t j = d / 2 - 1; j >= 1; --j) {
    t.r[j] = std::hypot(t.r[2 * j], t.r[2 * j + 1]);
    t.theta[j] = internal_angle(t.r[2 * j], t.r[j]);
  }
  return t;
}

AngleTree update_angle_path(const AngleTree& t, const DataVector& x, std::size_t i, double v) {
  const std::size_t d = x.dimension();
  if (t.dimension != d)
    throw std::invalid_argument("update_angle_path: tree/vector dimension mismatch");
  if (i < 1 || i > d)
    throw std::invalid_argument("update_angle_path: coordinate index out of range");

  AngleTree out = t;
  const std::size_t j = (i + 1) / 2;  // leaf pair index
  const double odd = (i % 2 == 1) ? v : x.entries[2 * j - 2];
  const double even = (i % 2 == 0) ? v : x.entries[2 * j - 1];

  std::size_t slot = d / 2 + j - 1;
  out.r[slot] = std::hypot(odd, even);
  out.theta[slot] = leaf_angle(odd, even, out.r[slot]);
  while (slot > 1) {
    slot /= 2;
    out.r[slot] = std::hypot(out.r[2 * slot], out.r[2 * slot + 1]);
    out.theta[slot] = internal_angle(out.r[2 * slot], out.r[slot]);
  }
  if (out.r[1] == 0.0)
    throw std::invalid_argument("update_angle_path: update produces the zero vector");
  return out;
}

MatrixLoaderAngles compile_matrix_angles(const DataVector& x) {
  const std::size_t d = x.dimension();
  const auto s = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d))));
  if (s * s != d || !is_power_of_two(s))
    throw std::invalid_argument("compile_matrix_angles: dimension must be a power of 4");
  if (x.norm == 0.0)
    throw std::invalid_argument("compile_matrix_angles: zero vector");

  MatrixLoaderAngles m;
  m.dimension = d;
  m.norm = x.norm;
  std::vector<double> row_norms(s, 0.0);
  m.rows.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<double> row(x.entries.begin() + static_cast<std::ptrdiff_t>(i * s),
                            x.entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * s));
    double sumsq = 0.0;
    for (double e : row) sumsq += e * e;
    row_norms[i] = std::sqrt(sumsq);
    if (row_norms[i] == 0.0) {
      m.rows.push_back(zero_tree(s));
    } else {
      m.rows.push_back(compile_angles(DataVector::from(std::move(row))));
    }
  }
  m.row_norms = compile_angles(DataVector::from(std::move(row_norms)));
  return m;
}

}  // namespace qnc
