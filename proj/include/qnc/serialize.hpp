#pragma once
// JSON forms of the wire-visible types. Keys and shapes are part of the CLI
// contract, documented in docs/FORMATS.md.

#include "json.hpp"

#include "qnc/angles.hpp"
#include "qnc/circuit.hpp"
#include "qnc/classifier.hpp"
#include "qnc/distance.hpp"
#include "qnc/simulator.hpp"

namespace qnc {

// {"dimension": d, "r": [d-1 values], "theta": [d-1 values]}
nlohmann::json to_json(const AngleTree& t);
AngleTree angle_tree_from_json(const nlohmann::json& j);

// {"qubits": n, "layers": [[{"kind": "...", "qubits": [...], "angle": ...}]]};
// X and CNOT gates omit "angle".
nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

// {"mode": "full-readout"|"first-qubit", "total": N, "counts": {"0100": 12}}
nlohmann::json to_json(const ShotRecord& rec);
ShotRecord shot_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DistanceEstimate& est);

nlohmann::json to_json(const PredictionReport& rep);

}  // namespace qnc
