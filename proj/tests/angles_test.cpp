#include "qnc/angles.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qnc/circuit.hpp"
#include "qnc/simulator.hpp"
#include "test_util.hpp"

using namespace qnc;

namespace {
constexpr double kPi = std::numbers::pi;

// Oracle: load the compiled tree through the unary simulator and compare
// against the normalized input, entry by entry.
double roundtrip_error(const std::vector<double>& values) {
  const DataVector x = DataVector::from(values);
  const UnaryState st = run_unary(build_parallel_loader(compile_angles(x)));
  double err = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    err = std::max(err, std::abs(st.amps[i] - values[i] / x.norm));
  return err;
}
}  // namespace

TEST_CASE("basis vector compiles to vanishing rotations") {
  const AngleTree t = compile_angles(DataVector::from({1, 0, 0, 0}));
  CHECK(t.dimension == 4);
  CHECK(t.theta[1] == 0.0);
  CHECK(t.theta[2] == 0.0);
  CHECK(t.theta[3] == 0.0);  // zero-norm subtree takes theta = 0
  CHECK(t.r[1] == doctest::Approx(1.0));
  CHECK(t.r[2] == doctest::Approx(1.0));
  CHECK(t.r[3] == 0.0);
}

TEST_CASE("uniform vector is forced to pi/4 everywhere") {
  const AngleTree t = compile_angles(DataVector::from({0.5, 0.5, 0.5, 0.5}));
  for (std::size_t j = 1; j <= 3; ++j) CHECK(t.theta[j] == doctest::Approx(kPi / 4));
  CHECK(t.r[1] == doctest::Approx(1.0));
  CHECK(t.r[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(t.r[3] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("round-trip through the loader reproduces mixed-sign vectors") {
  RngStream rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    CHECK(roundtrip_error(test::random_unit_vector(8, rng)) < 1e-10);
  }
}

TEST_CASE("round-trip across dimensions") {
  RngStream rng(12);
  for (std::size_t d : {2u, 4u, 8u, 16u, 32u}) {
    for (int rep = 0; rep < 50; ++rep) {
      CHECK(roundtrip_error(test::random_vector(d, rng)) < 1e-10);
    }
  }
}

TEST_CASE("tree invariants hold on random vectors") {
  RngStream rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 16;
    const DataVector x = DataVector::from(test::random_vector(d, rng));
    const AngleTree t = compile_angles(x);
    CHECK(t.r[1] == doctest::Approx(x.norm).epsilon(1e-12));
    // Leaf level: r^2 matches the coordinate pairs; their sum conserves the norm.
    double leaf_sumsq = 0.0;
    for (std::size_t j = 1; j <= d / 2; ++j) {
      const double expect =
          x.entries[2 * j - 2] * x.entries[2 * j - 2] + x.entries[2 * j - 1] * x.entries[2 * j - 1];
      CHECK(t.r[d / 2 + j - 1] * t.r[d / 2 + j - 1] == doctest::Approx(expect).epsilon(1e-12));
      leaf_sumsq += t.r[d / 2 + j - 1] * t.r[d / 2 + j - 1];
    }
    CHECK(leaf_sumsq == doctest::Approx(x.norm * x.norm).epsilon(1e-12));
    for (std::size_t j = 1; j <= d / 2 - 1; ++j) {
      const double expect = t.r[2 * j] * t.r[2 * j] + t.r[2 * j + 1] * t.r[2 * j + 1];
      CHECK(t.r[j] * t.r[j] == doctest::Approx(expect).epsilon(1e-12));
      CHECK(t.theta[j] >= 0.0);
      CHECK(t.theta[j] <= kPi / 2 + 1e-15);
    }
  }
}

TEST_CASE("angles are scale invariant") {
  RngStream rng(14);
  const DataVector x = DataVector::from(test::random_vector(16, rng));
  const AngleTree base = compile_angles(x);
  // Power-of-two scalings are exact in floating point.
  for (double c : {2.0, 0.25, 1024.0}) {
    std::vector<double> scaled = x.entries;
    for (double& v : scaled) v *= c;
    const AngleTree t = compile_angles(DataVector::from(scaled));
    for (std::size_t j = 1; j < 16; ++j) CHECK(t.theta[j] == base.theta[j]);
  }
  for (double c : {3.0, 0.7}) {
    std::vector<double> scaled = x.entries;
    for (double& v : scaled) v *= c;
    const AngleTree t = compile_angles(DataVector::from(scaled));
    for (std::size_t j = 1; j < 16; ++j)
      CHECK(t.theta[j] == doctest::Approx(base.theta[j]).epsilon(1e-12));
  }
}

TEST_CASE("error contracts") {
  CHECK_THROWS_AS(compile_angles(DataVector::from({0, 0, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(DataVector::from({1, 2, 3}), std::invalid_argument);
  CHECK(DataVector::padded({1, 2, 3}).dimension() == 4);
  CHECK(DataVector::padded({5}).dimension() == 2);
}

TEST_CASE("identity update leaves the tree unchanged") {
  RngStream rng(15);
  const DataVector x = DataVector::from(test::random_vector(8, rng));
  const AngleTree t = compile_angles(x);
  const AngleTree u = update_angle_path(t, x, 3, x.entries[2]);
  for (std::size_t j = 1; j < 8; ++j) {
    CHECK(u.r[j] == t.r[j]);
    CHECK(u.theta[j] == t.theta[j]);
  }
}

TEST_CASE("sign flip of an even coordinate only reflects its leaf angle") {
  RngStream rng(16);
  std::vector<double> v = test::random_unit_vector(8, rng, /*nonnegative=*/true);
  const DataVector x = DataVector::from(v);
  const AngleTree t = compile_angles(x);
  const AngleTree u = update_angle_path(t, x, 2, -v[1]);
  for (std::size_t j = 1; j < 8; ++j) CHECK(u.r[j] == doctest::Approx(t.r[j]).epsilon(1e-14));
  // Leaf slot for coordinates (1, 2) is d/2 = 4; the branch reflects.
  CHECK(u.theta[4] == doctest::Approx(2 * kPi - t.theta[4]));
  for (std::size_t j : {1u, 2u, 3u, 5u, 6u, 7u}) CHECK(u.theta[j] == t.theta[j]);
}

TEST_CASE("update matches a from-scratch compilation") {
  const DataVector x = DataVector::from({1, 0, 0, 0});
  const AngleTree updated = update_angle_path(compile_angles(x), x, 3, 1.0);
  const AngleTree fresh = compile_angles(DataVector::from({1, 0, 1, 0}));
  for (std::size_t j = 1; j < 4; ++j) {
    CHECK(updated.r[j] == doctest::Approx(fresh.r[j]));
    CHECK(updated.theta[j] == doctest::Approx(fresh.theta[j]));
  }
}

TEST_CASE("path updates agree with recompilation on random triples") {
  RngStream rng(17);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t d = 16;
    std::vector<double> v = test::random_vector(d, rng);
    const DataVector x = DataVector::from(v);
    const auto i = static_cast<std::size_t>(rng.uniform_int(d)) + 1;
    const double nv = rng.normal();
    const AngleTree updated = update_angle_path(compile_angles(x), x, i, nv);
    v[i - 1] = nv;
    const AngleTree fresh = compile_angles(DataVector::from(v));
    for (std::size_t j = 1; j < d; ++j) {
      CHECK(updated.r[j] == doctest::Approx(fresh.r[j]).epsilon(1e-12));
      CHECK(updated.theta[j] == doctest::Approx(fresh.theta[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("update to the all-zero vector is rejected") {
  const DataVector x = DataVector::from({0, 0, 3, 0});
  const AngleTree t = compile_angles(x);
  CHECK_THROWS_AS(update_angle_path(t, x, 3, 0.0), std::invalid_argument);
}

TEST_CASE("matrix-view angles split a vector into row trees") {
  const DataVector x = DataVector::from({0.5, 0.5, 0.5, 0.5});
  const MatrixLoaderAngles m = compile_matrix_angles(x);
  CHECK(m.dimension == 4);
  CHECK(m.rows.size() == 2);
  CHECK(m.row_norms.root_norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(compile_matrix_angles(DataVector::from({1, 0, 0, 0, 0, 0, 0, 0})),
                  std::invalid_argument);  // 8 is not a power of 4
}
