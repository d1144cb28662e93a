#include "qvl/circuits.hpp"

#include <numbers>
#include <string>

namespace qvl {

Circuit build_feature_map(const FeatureMapSpec& spec,
                          const std::vector<double>& x) {
  if (spec.n_qubits < 1 || spec.reps < 1) {
    throw EncodingError("feature map needs n_qubits >= 1 and reps >= 1");
  }
  if (static_cast<int>(x.size()) != spec.n_qubits) {
    throw EncodingError("feature vector length " + std::to_string(x.size()) +
                        " != n_qubits " + std::to_string(spec.n_qubits));
  }
  constexpr double pi = std::numbers::pi;
  Circuit c(spec.n_qubits);
  for (int r = 0; r < spec.reps; ++r) {
    if (r == 0 || spec.hadamard_each_rep) {
      for (int q = 0; q < spec.n_qubits; ++q) c.add(GateOp::h(q));
    }
    for (int q = 0; q < spec.n_qubits; ++q) c.add(GateOp::p(2.0 * x[q], q));
    for (int q = 0; q + 1 < spec.n_qubits; ++q) {
      c.add(GateOp::cx(q, q + 1));
      c.add(GateOp::p(2.0 * (pi - x[q]) * (pi - x[q + 1]), q + 1));
      c.add(GateOp::cx(q, q + 1));
    }
  }
  return c;
}

Circuit build_ansatz(const AnsatzSpec& spec, const WeightVector& w) {
  if (spec.n_qubits < 1 || spec.reps < 1) {
    throw ParameterCountError("ansatz needs n_qubits >= 1 and reps >= 1");
  }
  if (static_cast<int>(w.size()) != spec.parameter_count()) {
    throw ParameterCountError(
        "weight vector length " + std::to_string(w.size()) + " != " +
        std::to_string(spec.parameter_count()));
  }
  Circuit c(spec.n_qubits);
  std::size_t next = 0;
  for (int r = 0; r < spec.reps; ++r) {
    for (int q = 0; q < spec.n_qubits; ++q) c.add(GateOp::ry(w[next++], q));
    for (int q = 0; q + 1 < spec.n_qubits; ++q) c.add(GateOp::cx(q, q + 1));
  }
  for (int q = 0; q < spec.n_qubits; ++q) c.add(GateOp::ry(w[next++], q));
  return c;
}

Circuit compose_model(const Circuit& fm, const Circuit& an) {
  if (fm.n_qubits != an.n_qubits) {
    throw InvalidCircuitError("feature map and ansatz qubit counts differ");
  }
  Circuit c(fm.n_qubits);
  c.ops = fm.ops;
  c.ops.insert(c.ops.end(), an.ops.begin(), an.ops.end());
  return c;
}

}  // namespace qvl
