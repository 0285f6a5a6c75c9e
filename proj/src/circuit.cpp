#include "qnc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnc {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool gate_kind_has_angle(GateKind k) {
  return k != GateKind::X && k != GateKind::CNOT;
}

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::RBS: return "RBS";
    case GateKind::IRBS: return "iRBS";
    case GateKind::ControlledRBS: return "ControlledRBS";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
  }
  return "?";
}

Gate Gate::x(std::uint32_t q) { return Gate{GateKind::X, 1, {q, 0, 0}, 0.0}; }

Gate Gate::rbs(std::uint32_t a, std::uint32_t b, double theta) {
  if (a == b) throw std::invalid_argument("RBS: qubits must be distinct");
  return Gate{GateKind::RBS, 2, {a, b, 0}, theta};
}

Gate Gate::irbs(std::uint32_t a, std::uint32_t b, double theta) {
  if (a == b) throw std::invalid_argument("iRBS: qubits must be distinct");
  return Gate{GateKind::IRBS, 2, {a, b, 0}, theta};
}

Gate Gate::controlled_rbs(std::uint32_t control, std::uint32_t a, std::uint32_t b, double theta) {
  if (control == a || control == b || a == b)
    throw std::invalid_argument("ControlledRBS: qubits must be distinct");
  return Gate{GateKind::ControlledRBS, 3, {control, a, b}, theta};
}

Gate Gate::cnot(std::uint32_t control, std::uint32_t target) {
  if (control == target) throw std::invalid_argument("CNOT: qubits must be distinct");
  return Gate{GateKind::CNOT, 2, {control, target, 0}, 0.0};
}

Gate Gate::rz(std::uint32_t q, double phi) { return Gate{GateKind::RZ, 1, {q, 0, 0}, phi}; }
Gate Gate::ry(std::uint32_t q, double phi) { return Gate{GateKind::RY, 1, {q, 0, 0}, phi}; }

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw std::invalid_argument("Circuit: need at least one qubit");
  qubit_frontier_.assign(num_qubits + 1, 0);
}

void Circuit::validate_gate(const Gate& g) const {
  for (std::uint32_t q : g.qubit_span()) {
    if (q < 1 || q > num_qubits_)
      throw std::invalid_argument("Circuit: qubit id out of range");
  }
}

void Circuit::count_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::RBS:
    case GateKind::IRBS:
      stats_.rbs_count += 1;
      stats_.native_tqg_count += 3;
      break;
    case GateKind::ControlledRBS:
      stats_.rbs_count += 1;  // no native decomposition; contributes no TQG estimate
      break;
    case GateKind::CNOT:
      stats_.native_tqg_count += 1;
      break;
    default:
      break;
  }
}

void Circuit::append_layer(std::vector<Gate> gates) {
  std::vector<bool> used(num_qubits_ + 1, false);
  for (const Gate& g : gates) {
    validate_gate(g);
    for (std::uint32_t q : g.qubit_span()) {
      if (used[q]) throw std::invalid_argument("Circuit: layer gates must act on disjoint qubits");
      used[q] = true;
    }
  }
  const std::size_t layer_index = layers_.size();
  for (const Gate& g : gates) {
    for (std::uint32_t q : g.qubit_span()) qubit_frontier_[q] = layer_index + 1;
    count_gate(g);
  }
  layers_.push_back(std::move(gates));
  stats_.depth = layers_.size();
}

void Circuit::append(const Gate& g) {
  validate_gate(g);
  std::size_t slot = 0;
  for (std::uint32_t q : g.qubit_span()) slot = std::max(slot, qubit_frontier_[q]);
  if (slot == layers_.size()) layers_.emplace_back();
  layers_[slot].push_back(g);
  for (std::uint32_t q : g.qubit_span()) qubit_frontier_[q] = slot + 1;
  count_gate(g);
  stats_.depth = layers_.size();
}

CircuitStats Circuit::recompute_stats() const {
  CircuitStats s;
  s.depth = layers_.size();
  for (const auto& layer : layers_) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::RBS:
        case GateKind::IRBS:
          s.rbs_count += 1;
          s.native_tqg_count += 3;
          break;
        case GateKind::ControlledRBS:
          s.rbs_count += 1;
          break;
        case GateKind::CNOT:
          s.native_tqg_count += 1;
          break;
        default:
          break;
      }
    }
  }
  return s;
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  return n;
}

Circuit build_parallel_loader(const AngleTree& t) {
  const std::size_t d = t.dimension;
  if (d < 2) throw std::invalid_argument("build_parallel_loader: dimension < 2");
  Circuit c(d);
  c.append_layer({Gate::x(1)});
  // Layer l holds tree slots [2^l, 2^(l+1)); slot j splits qubit pair
  // (1 + (j - 2^l) * d/2^l, + d/2^(l+1)), matching the binary-splitting figure.
  for (std::size_t l = 0; (std::size_t{1} << l) < d; ++l) {
    std::vector<Gate> layer;
    const std::size_t stride = d >> l;
    for (std::size_t j = (std::size_t{1} << l); j < (std::size_t{2} << l); ++j) {
      const std::size_t lo = 1 + (j - (std::size_t{1} << l)) * stride;
      const std::size_t hi = lo + stride / 2;
      layer.push_back(Gate::rbs(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi),
                                t.theta[j]));
    }
    c.append_layer(std::move(layer));
  }
  return c;
}

Circuit build_optimized_loader(const MatrixLoaderAngles& m) {
  const std::size_t d = m.dimension;
  const auto s = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d))));
  if (s * s != d || m.rows.size() != s)
    throw std::invalid_argument("build_optimized_loader: dimension must be a power of 4");

  Circuit c(2 * s);
  // The unary 1 of the column register is injected once, unconditionally: in
  // every branch of the row superposition exactly one controlled loader fires
  // and redistributes it.
  c.append_layer({Gate::x(1), Gate::x(static_cast<std::uint32_t>(s + 1))});

  const Circuit row_loader = build_parallel_loader(m.row_norms);
  for (std::size_t li = 1; li < row_loader.layers().size(); ++li)
    c.append_layer(row_loader.layers()[li]);

  // Gates of one controlled loader all share the control qubit, so each row's
  // tree is serialized; rows are interleaved round-robin over tree slots to
  // pipeline them. Alternating the within-level slot order between adjacent
  // rows lets ASAP packing overlap rows on disjoint column pairs.
  std::vector<std::vector<std::size_t>> order(s);
  for (std::size_t row = 0; row < s; ++row) {
    for (std::size_t l = 0; (std::size_t{1} << l) < s; ++l) {
      const std::size_t begin = std::size_t{1} << l;
      const std::size_t end = std::size_t{2} << l;
      if (row % 2 == 0) {
        for (std::size_t j = begin; j < end; ++j) order[row].push_back(j);
      } else {
        for (std::size_t j = end; j-- > begin;) order[row].push_back(j);
      }
    }
  }
  for (std::size_t pos = 0; pos + 1 < s; ++pos) {
    for (std::size_t row = 0; row < s; ++row) {
      const std::size_t j = order[row][pos];
      // Column pair of tree slot j, offset into the column register.
      std::size_t l = 0;
      while ((std::size_t{2} << l) <= j) ++l;
      const std::size_t stride = s >> l;
      const std::size_t lo = 1 + (j - (std::size_t{1} << l)) * stride;
      const std::size_t hi = lo + stride / 2;
      c.append(Gate::controlled_rbs(static_cast<std::uint32_t>(1 + row),
                                    static_cast<std::uint32_t>(s + lo),
                                    static_cast<std::uint32_t>(s + hi), m.rows[row].theta[j]));
    }
  }
  return c;
}

Circuit adjoint(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
    std::vector<Gate> layer;
    layer.reserve(it->size());
    for (const Gate& g : *it) {
      switch (g.kind) {
        case GateKind::X:
          layer.push_back(g);
          break;
        case GateKind::RBS:
        case GateKind::IRBS: {
          Gate a = g;
          a.angle = -a.angle;
          layer.push_back(a);
          break;
        }
        default:
          throw std::invalid_argument("adjoint: only X/RBS/iRBS circuits are supported");
      }
    }
    out.append_layer(std::move(layer));
  }
  return out;
}

namespace {

// Native decomposition of iRBS(theta) on (a, b), exact up to a global phase:
// three CNOTs plus RZ/RY singles, per the standard CNOT synthesis of the
// XX+YY interaction.
void emit_irbs_native(Circuit& c, std::uint32_t a, std::uint32_t b, double theta) {
  c.append(Gate::rz(b, kPi / 2));
  c.append(Gate::cnot(b, a));
  c.append(Gate::rz(a, -kPi / 2));
  c.append(Gate::ry(b, theta - kPi / 2));
  c.append(Gate::cnot(a, b));
  c.append(Gate::ry(b, kPi / 2 - theta));
  c.append(Gate::cnot(b, a));
  c.append(Gate::rz(a, -kPi / 2));
}

// RBS(theta) is the same interaction in a rotated phase gauge; the wrapping
// RZ gates merge with the template's own, leaving the CNOT count at three.
void emit_rbs_native(Circuit& c, std::uint32_t a, std::uint32_t b, double theta) {
  c.append(Gate::rz(a, -kPi));
  c.append(Gate::rz(b, kPi));
  c.append(Gate::cnot(b, a));
  c.append(Gate::rz(a, -kPi / 2));
  c.append(Gate::ry(b, theta - kPi / 2));
  c.append(Gate::cnot(a, b));
  c.append(Gate::ry(b, kPi / 2 - theta));
  c.append(Gate::cnot(b, a));
  c.append(Gate::rz(a, -3 * kPi / 2));
  c.append(Gate::rz(b, -kPi / 2));
}

}  // namespace

Circuit lower_to_native(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const auto& layer : c.layers()) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::X:
          out.append(g);
          break;
        case GateKind::RBS:
          emit_rbs_native(out, g.qubits[0], g.qubits[1], g.angle);
          break;
        case GateKind::IRBS:
          emit_irbs_native(out, g.qubits[0], g.qubits[1], g.angle);
          break;
        case GateKind::ControlledRBS:
          throw std::invalid_argument("lower_to_native: ControlledRBS has no native decomposition");
        default:
          throw std::invalid_argument("lower_to_native: circuit is already native");
      }
    }
  }
  return out;
}

}  // namespace qnc
