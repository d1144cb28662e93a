#pragma once

#include <vector>

#include "qvl/statevec.hpp"

namespace qvl {

struct EncodingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParameterCountError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ZZ-style feature map: per repetition a Hadamard layer, single-qubit phases
// P(2 x_i), and for each linear pair (i, i+1) the entangled phase
// CX, P(2 (pi - x_i)(pi - x_j)), CX on qubit i+1.
struct FeatureMapSpec {
  int n_qubits = 1;
  int reps = 1;
  // When false, the Hadamard layer is emitted only on the first repetition.
  bool hadamard_each_rep = true;
};

// RY-layer ansatz with a linear CX chain between layers; one trailing RY
// layer, so the parameter count is n_qubits * (reps + 1).
struct AnsatzSpec {
  int n_qubits = 1;
  int reps = 1;

  int parameter_count() const { return n_qubits * (reps + 1); }
};

using WeightVector = std::vector<double>;

Circuit build_feature_map(const FeatureMapSpec& spec,
                          const std::vector<double>& x);

Circuit build_ansatz(const AnsatzSpec& spec, const WeightVector& w);

Circuit compose_model(const Circuit& fm, const Circuit& an);

}  // namespace qvl
