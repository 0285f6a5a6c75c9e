#pragma once
// Layered gate-list circuit representation. Gates inside one layer act on
// disjoint qubits (the parallel-application contract). Qubit ids are 1-based.
//
// Conventions pinned by the loader round-trip tests:
//  - RBS(theta) on gate qubits (a, b) maps the unary amplitudes
//        (amp_a, amp_b) -> (cos*amp_a - sin*amp_b, sin*amp_a + cos*amp_b),
//    i.e. in the two-qubit block ordered |00>,|01>,|10>,|11> the |10> row is
//    the state where qubit a holds the 1.
//  - iRBS(theta) is the variant with -i*sin off-diagonals; it has the same
//    measurement statistics in the distance pipeline.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qnc/angles.hpp"

namespace qnc {

enum class GateKind : std::uint8_t { X, RBS, IRBS, ControlledRBS, CNOT, RZ, RY };

bool gate_kind_has_angle(GateKind k);
const char* gate_kind_name(GateKind k);

struct Gate {
  GateKind kind = GateKind::X;
  std::uint8_t arity = 1;
  std::array<std::uint32_t, 3> qubits{};  // 1-based; only the first `arity` used
  double angle = 0.0;

  static Gate x(std::uint32_t q);
  static Gate rbs(std::uint32_t a, std::uint32_t b, double theta);
  static Gate irbs(std::uint32_t a, std::uint32_t b, double theta);
  // ControlledRBS applies RBS(theta) on (a, b) when the control qubit is 1.
  static Gate controlled_rbs(std::uint32_t control, std::uint32_t a, std::uint32_t b, double theta);
  static Gate cnot(std::uint32_t control, std::uint32_t target);
  static Gate rz(std::uint32_t q, double phi);
  static Gate ry(std::uint32_t q, double phi);

  std::span<const std::uint32_t> qubit_span() const { return {qubits.data(), arity}; }
  bool operator==(const Gate&) const = default;
};

struct CircuitStats {
  std::size_t rbs_count = 0;         // parametrized two/three-qubit gates (RBS, iRBS, ControlledRBS)
  std::size_t native_tqg_count = 0;  // CNOTs, plus 3 per RBS/iRBS (their lowering cost)
  std::size_t depth = 0;             // number of layers
};

class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits);

  // Appends a whole layer; throws if two gates share a qubit or a qubit id is
  // out of range.
  void append_layer(std::vector<Gate> gates);
  // Appends one gate into the earliest layer after the last use of any of its
  // qubits (ASAP packing; preserves per-qubit program order).
  void append(const Gate& g);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<std::vector<Gate>>& layers() const { return layers_; }
  const CircuitStats& stats() const { return stats_; }
  // Recounts from the gate list; used to check the cached metadata.
  CircuitStats recompute_stats() const;
  std::size_t gate_count() const;

 private:
  std::size_t num_qubits_;
  std::vector<std::vector<Gate>> layers_;
  std::vector<std::size_t> qubit_frontier_;  // last layer index + 1 per qubit
  CircuitStats stats_;

  void count_gate(const Gate& g);
  void validate_gate(const Gate& g) const;
};

// Parallel unary loader: d qubits, one X, then log2(d) layers of RBS gates in
// the binary-splitting pattern. Exactly d-1 RBS gates.
Circuit build_parallel_loader(const AngleTree& t);

// 2*sqrt(d)-qubit loader for d a power of 4: a parallel loader on the
// row-norm register followed by sqrt(d) controlled loaders over the column
// register, interleaved across rows to keep the depth at O(sqrt(d) log d).
// Exactly d-1 parametrized gates.
Circuit build_optimized_loader(const MatrixLoaderAngles& m);

// Reversed layers with negated angles. Requires X/RBS/iRBS gates only.
Circuit adjoint(const Circuit& c);

// Replaces every RBS/iRBS with its 3-CNOT native decomposition (CNOT + RZ/RY
// singles). Exact up to a global phase per gate, so whole-circuit unitaries
// are preserved up to a global phase. Throws on ControlledRBS.
Circuit lower_to_native(const Circuit& c);

}  // namespace qnc
