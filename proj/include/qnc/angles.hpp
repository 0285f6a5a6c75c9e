#pragma once
// Classical preprocessing of a data vector into the binary tree of subvector
// norms r and rotation angles theta that parametrize the loader circuit.
// The tree is stored in heap order: slot 1 is the root, slot j has children
// 2j and 2j+1, slots [d/2, d-1] are the leaf pairs.

#include <cstddef>
#include <vector>

namespace qnc {

struct DataVector {
  std::vector<double> entries;  // length d, a power of two
  double norm = 0.0;            // Euclidean norm, computed on construction

  // Requires a power-of-two length; computes the norm in one pass.
  static DataVector from(std::vector<double> values);
  // Pads with trailing zeros to the next power of two (minimum 2) first.
  static DataVector padded(std::vector<double> values);

  std::size_t dimension() const { return entries.size(); }
};

struct AngleTree {
  std::size_t dimension = 0;  // d
  // Heap slots 1..d-1; slot 0 is unused. Internal angles lie in [0, pi/2];
  // leaf angles lie in [0, 2*pi) with the sign of the even coordinate
  // selecting the branch. Zero-norm subtrees take theta = 0.
  std::vector<double> r;
  std::vector<double> theta;

  double root_norm() const { return r[1]; }
};

// One read-once pass over x; O(d) time. Throws std::invalid_argument for the
// zero vector or a non-power-of-two length.
AngleTree compile_angles(const DataVector& x);

// Recomputes only the log(d) tree nodes on the path from leaf pair of
// coordinate i (1-based) to the root, as if entry i of x were set to v.
// t must be the tree compiled from x. Throws if the update would produce the
// all-zero vector.
AngleTree update_angle_path(const AngleTree& t, const DataVector& x, std::size_t i, double v);

// Angle decomposition of x viewed as a sqrt(d) x sqrt(d) matrix: a tree for
// the vector of row norms plus one tree per row. Feeds the 2*sqrt(d)-qubit
// loader. Requires d to be a power of 4.
struct MatrixLoaderAngles {
  std::size_t dimension = 0;     // d
  double norm = 0.0;             // Euclidean norm of x
  AngleTree row_norms;           // sqrt(d)-dimensional tree
  std::vector<AngleTree> rows;   // sqrt(d) trees; zero rows give all-zero trees
};

MatrixLoaderAngles compile_matrix_angles(const DataVector& x);

}  // namespace qnc
