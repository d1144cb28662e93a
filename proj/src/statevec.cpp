#include "qvl/statevec.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace qvl {

bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::CZ;
}

bool has_angle(GateKind k) {
  switch (k) {
    case GateKind::P:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      return true;
    default:
      return false;
  }
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::P: return "P";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

void validate_gate(const GateOp& g, int n_qubits) {
  const std::size_t want = is_two_qubit(g.kind) ? 2 : 1;
  if (g.targets.size() != want) {
    throw InvalidGateError(std::string(gate_name(g.kind)) + " expects " +
                           std::to_string(want) + " target(s)");
  }
  for (int t : g.targets) {
    if (t < 0 || t >= n_qubits) {
      throw InvalidGateError("gate target " + std::to_string(t) +
                             " out of range for " + std::to_string(n_qubits) +
                             " qubits");
    }
  }
  if (want == 2 && g.targets[0] == g.targets[1]) {
    throw InvalidGateError("two-qubit gate targets must be distinct");
  }
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 12) {
    throw InvalidCircuitError("n_qubits must be in 1..12");
  }
  amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw InvalidCircuitError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

namespace {

// Single-qubit unitary as a row-major 2x2.
std::array<cdouble, 4> gate_matrix(const GateOp& g) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cdouble i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y:
      return {0.0, -i, i, 0.0};
    case GateKind::Z:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::P:
      return {1.0, 0.0, 0.0, std::exp(i * g.theta)};
    case GateKind::RX: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      return {c, -i * s, -i * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ:
      return {std::exp(-i * (g.theta / 2)), 0.0, 0.0,
              std::exp(i * (g.theta / 2))};
    default:
      throw InvalidGateError("not a single-qubit gate");
  }
}

void apply_single(std::vector<cdouble>& amps, int q,
                  const std::array<cdouble, 4>& u) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t n = amps.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k & mask) continue;
    const cdouble a0 = amps[k];
    const cdouble a1 = amps[k | mask];
    amps[k] = u[0] * a0 + u[1] * a1;
    amps[k | mask] = u[2] * a0 + u[3] * a1;
  }
}

}  // namespace

void apply_gate(StateVector& state, const GateOp& g) {
  validate_gate(g, state.n_qubits());
  auto& amps = state.amps();
  switch (g.kind) {
    case GateKind::CX: {
      const std::size_t cmask = std::size_t{1} << g.targets[0];
      const std::size_t tmask = std::size_t{1} << g.targets[1];
      for (std::size_t k = 0; k < amps.size(); ++k) {
        if ((k & cmask) && !(k & tmask)) std::swap(amps[k], amps[k | tmask]);
      }
      return;
    }
    case GateKind::CZ: {
      const std::size_t both = (std::size_t{1} << g.targets[0]) |
                               (std::size_t{1} << g.targets[1]);
      for (std::size_t k = 0; k < amps.size(); ++k) {
        if ((k & both) == both) amps[k] = -amps[k];
      }
      return;
    }
    default:
      apply_single(amps, g.targets[0], gate_matrix(g));
      return;
  }
}

StateVector run_circuit(const Circuit& c, StateVector initial) {
  if (initial.n_qubits() != c.n_qubits) {
    throw InvalidCircuitError("circuit/state qubit count mismatch");
  }
  for (const auto& g : c.ops) apply_gate(initial, g);
  return initial;
}

UnitaryMatrix unitary_of(const Circuit& c) {
  if (c.n_qubits > 10) {
    throw CapacityError("unitary_of limited to 10 qubits");
  }
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  UnitaryMatrix m(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    StateVector col = run_circuit(c, StateVector::basis(c.n_qubits, k));
    for (std::size_t r = 0; r < dim; ++r) m(r, k) = col.amps()[r];
  }
  return m;
}

std::vector<double> output_distribution(const StateVector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(state.amps()[k]);
  return p;
}

DiagonalObservable DiagonalObservable::z_parity() {
  return {[](std::uint64_t k) {
    return (std::popcount(k) % 2 == 0) ? 1.0 : -1.0;
  }};
}

DiagonalObservable DiagonalObservable::projector_zero() {
  return {[](std::uint64_t k) { return k == 0 ? 1.0 : 0.0; }};
}

double expectation(const StateVector& state, const DiagonalObservable& obs) {
  double sum = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    sum += obs.eigenvalue(k) * std::norm(state.amps()[k]);
  }
  return sum;
}

}  // namespace qvl
