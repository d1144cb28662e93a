#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qvl {

using cdouble = std::complex<double>;

// Basis indexing is little-endian: qubit q contributes bit q of the index.

enum class GateKind { H, X, Y, Z, P, RX, RY, RZ, CX, CZ };

bool is_two_qubit(GateKind k);
bool has_angle(GateKind k);
const char* gate_name(GateKind k);

struct GateOp {
  GateKind kind;
  std::vector<int> targets;  // for CX: targets[0] is the control
  double theta = 0.0;

  static GateOp h(int q) { return {GateKind::H, {q}}; }
  static GateOp x(int q) { return {GateKind::X, {q}}; }
  static GateOp y(int q) { return {GateKind::Y, {q}}; }
  static GateOp z(int q) { return {GateKind::Z, {q}}; }
  static GateOp p(double theta, int q) { return {GateKind::P, {q}, theta}; }
  static GateOp rx(double theta, int q) { return {GateKind::RX, {q}, theta}; }
  static GateOp ry(double theta, int q) { return {GateKind::RY, {q}, theta}; }
  static GateOp rz(double theta, int q) { return {GateKind::RZ, {q}, theta}; }
  static GateOp cx(int control, int target) {
    return {GateKind::CX, {control, target}};
  }
  static GateOp cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
};

struct InvalidGateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidCircuitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws InvalidGateError if g is malformed for an n-qubit register.
void validate_gate(const GateOp& g, int n_qubits);

struct Circuit {
  int n_qubits = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  Circuit& add(GateOp g) {
    validate_gate(g, n_qubits);
    ops.push_back(std::move(g));
    return *this;
  }
};

class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>
  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amps() const { return amps_; }
  std::vector<cdouble>& amps() { return amps_; }
  double norm() const;

 private:
  int n_qubits_;
  std::vector<cdouble> amps_;
};

void apply_gate(StateVector& state, const GateOp& g);

StateVector run_circuit(const Circuit& c, StateVector initial);

using UnitaryMatrix = Eigen::MatrixXcd;

// Column k is the circuit applied to basis state k. Limited to n_qubits <= 10.
UnitaryMatrix unitary_of(const Circuit& c);

std::vector<double> output_distribution(const StateVector& state);

// Hermitian observable that is diagonal in the computational basis.
struct DiagonalObservable {
  std::function<double(std::uint64_t)> eigenvalue;

  static DiagonalObservable z_parity();        // (-1)^popcount(index)
  static DiagonalObservable projector_zero();  // |0...0><0...0|
};

double expectation(const StateVector& state, const DiagonalObservable& obs);

}  // namespace qvl
