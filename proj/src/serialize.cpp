#include "qnc/serialize.hpp"

#include <stdexcept>
#include <string>

namespace qnc {

using nlohmann::json;

json to_json(const AngleTree& t) {
  return json{{"dimension", t.dimension},
              {"r", std::vector<double>(t.r.begin() + 1, t.r.end())},
              {"theta", std::vector<double>(t.theta.begin() + 1, t.theta.end())}};
}

AngleTree angle_tree_from_json(const json& j) {
  AngleTree t;
  t.dimension = j.at("dimension").get<std::size_t>();
  const auto r = j.at("r").get<std::vector<double>>();
  const auto theta = j.at("theta").get<std::vector<double>>();
  if (r.size() != t.dimension - 1 || theta.size() != t.dimension - 1)
    throw std::invalid_argument("angle_tree_from_json: expected d-1 values");
  t.r.assign(1, 0.0);
  t.r.insert(t.r.end(), r.begin(), r.end());
  t.theta.assign(1, 0.0);
  t.theta.insert(t.theta.end(), theta.begin(), theta.end());
  return t;
}

namespace {

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "X") return GateKind::X;
  if (name == "RBS") return GateKind::RBS;
  if (name == "iRBS") return GateKind::IRBS;
  if (name == "ControlledRBS") return GateKind::ControlledRBS;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "RZ") return GateKind::RZ;
  if (name == "RY") return GateKind::RY;
  throw std::invalid_argument("unknown gate kind: " + name);
}

}  // namespace

json to_json(const Circuit& c) {
  json layers = json::array();
  for (const auto& layer : c.layers()) {
    json jl = json::array();
    for (const Gate& g : layer) {
      json jg{{"kind", gate_kind_name(g.kind)},
              {"qubits", std::vector<std::uint32_t>(g.qubit_span().begin(), g.qubit_span().end())}};
      if (gate_kind_has_angle(g.kind)) jg["angle"] = g.angle;
      jl.push_back(std::move(jg));
    }
    layers.push_back(std::move(jl));
  }
  return json{{"qubits", c.num_qubits()}, {"layers", std::move(layers)}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c(j.at("qubits").get<std::size_t>());
  for (const auto& jl : j.at("layers")) {
    std::vector<Gate> layer;
    for (const auto& jg : jl) {
      const GateKind kind = gate_kind_from_name(jg.at("kind").get<std::string>());
      const auto qubits = jg.at("qubits").get<std::vector<std::uint32_t>>();
      const double angle = jg.contains("angle") ? jg.at("angle").get<double>() : 0.0;
      switch (kind) {
        case GateKind::X: layer.push_back(Gate::x(qubits.at(0))); break;
        case GateKind::RBS: layer.push_back(Gate::rbs(qubits.at(0), qubits.at(1), angle)); break;
        case GateKind::IRBS: layer.push_back(Gate::irbs(qubits.at(0), qubits.at(1), angle)); break;
        case GateKind::ControlledRBS:
          layer.push_back(Gate::controlled_rbs(qubits.at(0), qubits.at(1), qubits.at(2), angle));
          break;
        case GateKind::CNOT: layer.push_back(Gate::cnot(qubits.at(0), qubits.at(1))); break;
        case GateKind::RZ: layer.push_back(Gate::rz(qubits.at(0), angle)); break;
        case GateKind::RY: layer.push_back(Gate::ry(qubits.at(0), angle)); break;
      }
    }
    c.append_layer(std::move(layer));
  }
  return c;
}

json to_json(const ShotRecord& rec) {
  json counts = json::object();
  for (const auto& [key, count] : rec.counts)
    counts[key_to_bitstring(key, rec.num_qubits)] = count;
  return json{{"mode", rec.mode == ReadoutMode::FirstQubit ? "first-qubit" : "full-readout"},
              {"total", rec.total},
              {"counts", std::move(counts)}};
}

ShotRecord shot_record_from_json(const json& j) {
  ShotRecord rec;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "first-qubit") rec.mode = ReadoutMode::FirstQubit;
  else if (mode == "full-readout") rec.mode = ReadoutMode::FullReadout;
  else throw std::invalid_argument("shot_record_from_json: unknown mode " + mode);
  rec.total = j.at("total").get<std::uint64_t>();
  std::uint64_t sum = 0;
  for (const auto& [bits, count] : j.at("counts").items()) {
    rec.num_qubits = bits.size();
    rec.counts[bitstring_to_key(bits)] = count.get<std::uint64_t>();
    sum += count.get<std::uint64_t>();
  }
  if (sum != rec.total)
    throw std::invalid_argument("shot_record_from_json: counts do not sum to total");
  return rec;
}

json to_json(const DistanceEstimate& est) {
  return json{{"c_hat", est.c_hat},
              {"l_hat", est.l_hat},
              {"p_hat", est.p_hat},
              {"shots_used", est.shots_used},
              {"mitigated", est.mitigated}};
}

json to_json(const PredictionReport& rep) {
  json labels = json::array();
  json distances = json::array();
  for (std::size_t p = 0; p < rep.assigned.size(); ++p) {
    if (rep.assigned[p]) labels.push_back(rep.class_labels[*rep.assigned[p]]);
    else labels.push_back(nullptr);
    json row = json::array();
    for (const auto& est : rep.distances[p]) row.push_back(to_json(est));
    distances.push_back(std::move(row));
  }
  json out{{"class_labels", rep.class_labels},
           {"labels", std::move(labels)},
           {"distances", std::move(distances)},
           {"unclassified", rep.unclassified}};
  if (rep.accuracy) out["accuracy"] = *rep.accuracy;
  if (rep.agreement_with_classical) out["agreement_with_classical"] = *rep.agreement_with_classical;
  if (!rep.confusion.empty()) out["confusion"] = rep.confusion;
  return out;
}

}  // namespace qnc
