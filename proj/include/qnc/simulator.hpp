#pragma once
// Circuit execution: exact evolution on the d-dimensional unary subspace,
// a full 2^n statevector oracle, shot sampling under the coherent + global
// depolarizing noise model, and the two overlap estimators (raw first-qubit
// and post-selected).
//
// Noise model: every applied RBS angle becomes theta*(1 + gamma*g) with g a
// standard normal draw, and measurement samples from the mixture
//   p * P_unary + (1 - p) * Uniform(2^n),  p = fidelity^m,
// with m the native two-qubit gate count of the circuit.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qnc/circuit.hpp"
#include "qnc/rng.hpp"

namespace qnc {

struct UnaryState {
  std::vector<double> amps;  // amps[i] is the amplitude on e_(i+1)

  std::size_t dimension() const { return amps.size(); }
};

struct FullState {
  std::size_t num_qubits = 0;
  // amps[k] is the amplitude of the basis state whose bits, read qubit 1
  // first, are the binary digits of k (qubit 1 is the most significant bit,
  // so e_i has index 2^(n-i)).
  std::vector<std::complex<double>> amps;
};

struct NoiseSpec {
  double gamma = 0.0;     // coherent angle-noise magnitude
  double fidelity = 1.0;  // two-qubit gate fidelity, in (0, 1]
  std::uint64_t seed = 0;
  // When set, one coherent draw per gate is reused across all shots of a
  // batch (a systematic calibration offset) instead of fresh draws per shot.
  bool systematic = false;

  static NoiseSpec none() { return NoiseSpec{}; }
};

enum class ReadoutMode { FirstQubit, FullReadout };

struct ShotRecord {
  ReadoutMode mode = ReadoutMode::FullReadout;
  std::size_t num_qubits = 0;  // bits per recorded key: n, or 1 in first-qubit mode
  std::uint64_t total = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
};

// Thrown when post-selection discards every shot.
struct MitigationStarvation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact unary-subspace evolution. The circuit may contain one X (placing the
// 1) and RBS gates; anything else throws. Noiseless.
UnaryState run_unary(const Circuit& c);
// Same, with each gate angle perturbed to theta*(1 + gamma*g), g ~ N(0,1)
// drawn from rng per gate. gamma == 0 never draws.
UnaryState run_unary(const Circuit& c, double gamma, RngStream& rng);
// Same, with precomputed per-gate multipliers (gate order: layer by layer).
UnaryState run_unary_with_factors(const Circuit& c, const std::vector<double>& angle_factors);

// Exact statevector oracle; supports every gate kind. Throws above qubit_cap.
FullState run_full(const Circuit& c, std::size_t qubit_cap = 14);

// Runs the circuit's noisy unary evolution per shot (or once, for gamma == 0
// or systematic noise) and samples the depolarized mixture with p =
// fidelity^m, m taken from the circuit's native TQG count.
ShotRecord sample_shots(const Circuit& c, const NoiseSpec& noise, std::uint64_t shots,
                        ReadoutMode mode, RngStream& rng);
// Mixture sampling from fixed amplitudes (no coherent re-draws); m supplied
// by the caller.
ShotRecord sample_shots(const UnaryState& state, const NoiseSpec& noise, std::size_t n_qubits,
                        std::size_t m_tqg, std::uint64_t shots, ReadoutMode mode, RngStream& rng);

struct OverlapEstimate {
  double p_raw = 0.0;                     // P(first qubit reads 1)
  std::optional<double> p_mitigated;      // count(e_1) / count(unary); empty when starved
  std::optional<double> valid_fraction;   // count(unary) / total; full readout only
};

// Computes both estimators from a record. Throws std::invalid_argument on an
// empty record. p_mitigated is empty in first-qubit mode and on starvation.
OverlapEstimate estimate_overlap(const ShotRecord& rec);

// Bitstring of e_i (1-based) on n qubits, as used in ShotRecord keys.
std::uint64_t unary_key(std::size_t i, std::size_t n);
std::string key_to_bitstring(std::uint64_t key, std::size_t bits);
std::uint64_t bitstring_to_key(const std::string& s);

}  // namespace qnc
