#include "qnc/simulator.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qnc {

namespace {

using cplx = std::complex<double>;

void apply_rbs_unary(std::vector<double>& a, std::uint32_t qa, std::uint32_t qb, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double aa = a[qa - 1];
  const double ab = a[qb - 1];
  a[qa - 1] = c * aa - s * ab;
  a[qb - 1] = s * aa + c * ab;
}

UnaryState run_unary_impl(const Circuit& c, double gamma, RngStream* rng,
                          const std::vector<double>* factors) {
  const std::size_t d = c.num_qubits();
  std::vector<double> a(d, 0.0);
  bool injected = false;
  std::size_t gate_index = 0;
  for (const auto& layer : c.layers()) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::X:
          if (injected)
            throw std::invalid_argument("run_unary: a second X would leave the unary subspace");
          a[g.qubits[0] - 1] = 1.0;
          injected = true;
          break;
        case GateKind::RBS: {
          double theta = g.angle;
          if (factors != nullptr) {
            theta *= (*factors)[gate_index];
          } else if (gamma != 0.0) {
            theta *= 1.0 + gamma * rng->normal();
          }
          apply_rbs_unary(a, g.qubits[0], g.qubits[1], theta);
          break;
        }
        default:
          throw std::invalid_argument(std::string("run_unary: unsupported gate kind ") +
                                      gate_kind_name(g.kind));
      }
      ++gate_index;
    }
  }
  return UnaryState{std::move(a)};
}

void apply_two_level_full(std::vector<cplx>& amps, std::size_t bit_a, std::size_t bit_b,
                          cplx maa, cplx mab, cplx mba, cplx mbb,
                          std::uint64_t control_mask) {
  const std::uint64_t ma = std::uint64_t{1} << bit_a;
  const std::uint64_t mb = std::uint64_t{1} << bit_b;
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    // visit each (a=1,b=0) index once; partner has the bits swapped
    if ((k & ma) == 0 || (k & mb) != 0) continue;
    if ((k & control_mask) != control_mask) continue;
    const std::uint64_t j = (k & ~ma) | mb;
    const cplx va = amps[k];
    const cplx vb = amps[j];
    amps[k] = maa * va + mab * vb;
    amps[j] = mba * va + mbb * vb;
  }
}

}  // namespace

UnaryState run_unary(const Circuit& c) { return run_unary_impl(c, 0.0, nullptr, nullptr); }

UnaryState run_unary(const Circuit& c, double gamma, RngStream& rng) {
  return run_unary_impl(c, gamma, &rng, nullptr);
}

UnaryState run_unary_with_factors(const Circuit& c, const std::vector<double>& angle_factors) {
  if (angle_factors.size() != c.gate_count())
    throw std::invalid_argument("run_unary_with_factors: one factor per gate required");
  return run_unary_impl(c, 0.0, nullptr, &angle_factors);
}

FullState run_full(const Circuit& c, std::size_t qubit_cap) {
  const std::size_t n = c.num_qubits();
  if (n > qubit_cap)
    throw std::invalid_argument("run_full: qubit count exceeds the statevector cap");

  FullState st;
  st.num_qubits = n;
  st.amps.assign(std::uint64_t{1} << n, cplx{0.0, 0.0});
  st.amps[0] = 1.0;

  const auto bit_of = [n](std::uint32_t qubit) { return n - qubit; };  // qubit 1 = MSB
  for (const auto& layer : c.layers()) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::X: {
          const std::uint64_t m = std::uint64_t{1} << bit_of(g.qubits[0]);
          for (std::uint64_t k = 0; k < st.amps.size(); ++k) {
            if (k & m) continue;
            std::swap(st.amps[k], st.amps[k | m]);
          }
          break;
        }
        case GateKind::RBS: {
          const double co = std::cos(g.angle), si = std::sin(g.angle);
          apply_two_level_full(st.amps, bit_of(g.qubits[0]), bit_of(g.qubits[1]),
                               co, -si, si, co, 0);
          break;
        }
        case GateKind::IRBS: {
          const double co = std::cos(g.angle), si = std::sin(g.angle);
          const cplx off{0.0, -si};
          apply_two_level_full(st.amps, bit_of(g.qubits[0]), bit_of(g.qubits[1]),
                               co, off, off, co, 0);
          break;
        }
        case GateKind::ControlledRBS: {
          const double co = std::cos(g.angle), si = std::sin(g.angle);
          const std::uint64_t ctrl = std::uint64_t{1} << bit_of(g.qubits[0]);
          apply_two_level_full(st.amps, bit_of(g.qubits[1]), bit_of(g.qubits[2]),
                               co, -si, si, co, ctrl);
          break;
        }
        case GateKind::CNOT: {
          const std::uint64_t cm = std::uint64_t{1} << bit_of(g.qubits[0]);
          const std::uint64_t tm = std::uint64_t{1} << bit_of(g.qubits[1]);
          for (std::uint64_t k = 0; k < st.amps.size(); ++k) {
            if ((k & cm) == cm && (k & tm) == 0) std::swap(st.amps[k], st.amps[k | tm]);
          }
          break;
        }
        case GateKind::RZ: {
          const cplx lo = std::exp(cplx{0.0, -g.angle / 2});
          const cplx hi = std::exp(cplx{0.0, g.angle / 2});
          const std::uint64_t m = std::uint64_t{1} << bit_of(g.qubits[0]);
          for (std::uint64_t k = 0; k < st.amps.size(); ++k) st.amps[k] *= (k & m) ? hi : lo;
          break;
        }
        case GateKind::RY: {
          const double co = std::cos(g.angle / 2), si = std::sin(g.angle / 2);
          const std::uint64_t m = std::uint64_t{1} << bit_of(g.qubits[0]);
          for (std::uint64_t k = 0; k < st.amps.size(); ++k) {
            if (k & m) continue;
            const cplx v0 = st.amps[k];
            const cplx v1 = st.amps[k | m];
            st.amps[k] = co * v0 - si * v1;
            st.amps[k | m] = si * v0 + co * v1;
          }
          break;
        }
      }
    }
  }
  return st;
}

namespace {

// Draws one bitstring from p * P_unary + (1-p) * Uniform(2^n).
std::uint64_t draw_shot(const std::vector<double>& probs, double unary_mass, std::size_t n,
                        double p, RngStream& rng) {
  if (rng.uniform() < p) {
    double u = rng.uniform() * unary_mass;
    std::size_t i = 0;
    for (; i + 1 < probs.size(); ++i) {
      if (u < probs[i]) break;
      u -= probs[i];
    }
    return unary_key(i + 1, n);
  }
  return rng.uniform_int(std::uint64_t{1} << n);
}

}  // namespace

ShotRecord sample_shots(const Circuit& c, const NoiseSpec& noise, std::uint64_t shots,
                        ReadoutMode mode, RngStream& rng) {
  if (shots < 1) throw std::invalid_argument("sample_shots: need at least one shot");
  if (noise.fidelity <= 0.0 || noise.fidelity > 1.0)
    throw std::invalid_argument("sample_shots: fidelity must be in (0, 1]");
  const std::size_t n = c.num_qubits();
  const std::size_t m = c.stats().native_tqg_count;

  if (noise.gamma == 0.0) {
    return sample_shots(run_unary(c), noise, n, m, shots, mode, rng);
  }

  const double p = std::pow(noise.fidelity, static_cast<double>(m));
  ShotRecord rec;
  rec.mode = mode;
  rec.num_qubits = (mode == ReadoutMode::FirstQubit) ? 1 : n;
  rec.total = shots;

  std::vector<double> factors;
  if (noise.systematic) {
    factors.resize(c.gate_count());
    for (double& f : factors) f = 1.0 + noise.gamma * rng.normal();
  }

  std::vector<double> probs(n);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const UnaryState st = noise.systematic ? run_unary_with_factors(c, factors)
                                           : run_unary(c, noise.gamma, rng);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      probs[i] = st.amps[i] * st.amps[i];
      mass += probs[i];
    }
    std::uint64_t key = draw_shot(probs, mass, n, p, rng);
    if (mode == ReadoutMode::FirstQubit) key = (key >> (n - 1)) & 1;
    ++rec.counts[key];
  }
  return rec;
}

ShotRecord sample_shots(const UnaryState& state, const NoiseSpec& noise, std::size_t n_qubits,
                        std::size_t m_tqg, std::uint64_t shots, ReadoutMode mode, RngStream& rng) {
  if (shots < 1) throw std::invalid_argument("sample_shots: need at least one shot");
  if (state.dimension() != n_qubits)
    throw std::invalid_argument("sample_shots: state dimension must equal qubit count");
  const double p = std::pow(noise.fidelity, static_cast<double>(m_tqg));

  std::vector<double> probs(n_qubits);
  double mass = 0.0;
  for (std::size_t i = 0; i < n_qubits; ++i) {
    probs[i] = state.amps[i] * state.amps[i];
    mass += probs[i];
  }

  ShotRecord rec;
  rec.mode = mode;
  rec.num_qubits = (mode == ReadoutMode::FirstQubit) ? 1 : n_qubits;
  rec.total = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::uint64_t key = draw_shot(probs, mass, n_qubits, p, rng);
    if (mode == ReadoutMode::FirstQubit) key = (key >> (n_qubits - 1)) & 1;
    ++rec.counts[key];
  }
  return rec;
}

OverlapEstimate estimate_overlap(const ShotRecord& rec) {
  if (rec.total == 0) throw std::invalid_argument("estimate_overlap: empty record");

  OverlapEstimate est;
  if (rec.mode == ReadoutMode::FirstQubit) {
    std::uint64_t ones = 0;
    if (auto it = rec.counts.find(1); it != rec.counts.end()) ones = it->second;
    est.p_raw = static_cast<double>(ones) / static_cast<double>(rec.total);
    return est;
  }

  const std::size_t n = rec.num_qubits;
  const std::uint64_t first_bit = std::uint64_t{1} << (n - 1);
  std::uint64_t first_ones = 0, unary = 0, e1 = 0;
  for (const auto& [key, count] : rec.counts) {
    if (key & first_bit) first_ones += count;
    if (std::popcount(key) == 1 && key < (std::uint64_t{1} << n)) {
      unary += count;
      if (key == first_bit) e1 += count;
    }
  }
  est.p_raw = static_cast<double>(first_ones) / static_cast<double>(rec.total);
  est.valid_fraction = static_cast<double>(unary) / static_cast<double>(rec.total);
  if (unary > 0) est.p_mitigated = static_cast<double>(e1) / static_cast<double>(unary);
  return est;
}

std::uint64_t unary_key(std::size_t i, std::size_t n) {
  return std::uint64_t{1} << (n - i);
}

std::string key_to_bitstring(std::uint64_t key, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t b = 0; b < bits; ++b) {
    if (key & (std::uint64_t{1} << (bits - 1 - b))) s[b] = '1';
  }
  return s;
}

std::uint64_t bitstring_to_key(const std::string& s) {
  std::uint64_t key = 0;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring_to_key: bad character");
    key = (key << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return key;
}

}  // namespace qnc
