#pragma once

// Dense-matrix reference for the sparse simulator: every gate is embedded
// into the full 2^n x 2^n unitary by explicit Kronecker products and the
// circuit is an ordinary matrix chain. Deliberately shares no code with
// apply_gate.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qvl/statevec.hpp"

namespace qvl::oracle {

using Mat = Eigen::MatrixXcd;

inline Mat single_gate_matrix(const GateOp& g) {
  using namespace std::complex_literals;
  const double is2 = 1.0 / std::sqrt(2.0);
  Mat m(2, 2);
  switch (g.kind) {
    case GateKind::H: m << is2, is2, is2, -is2; break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -1i, 1i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::P: m << 1, 0, 0, std::exp(1i * g.theta); break;
    case GateKind::RX: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      m << c, -1i * s, -1i * s, c;
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::RZ:
      m << std::exp(-1i * (g.theta / 2)), 0, 0, std::exp(1i * (g.theta / 2));
      break;
    default:
      throw std::logic_error("not single-qubit");
  }
  return m;
}

// Kronecker embedding: per-qubit factors, qubit n-1 is the most significant
// index bit (little-endian state layout).
inline Mat embed(int n_qubits, const std::map<int, Mat>& factors) {
  Mat full = Mat::Identity(1, 1);
  for (int q = n_qubits - 1; q >= 0; --q) {
    Mat f = factors.count(q) ? factors.at(q) : Mat::Identity(2, 2);
    Mat next(full.rows() * 2, full.cols() * 2);
    for (int r = 0; r < full.rows(); ++r) {
      for (int c = 0; c < full.cols(); ++c) {
        next.block(r * 2, c * 2, 2, 2) = full(r, c) * f;
      }
    }
    full = std::move(next);
  }
  return full;
}

inline Mat gate_unitary(int n_qubits, const GateOp& g) {
  Mat p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  switch (g.kind) {
    case GateKind::CX: {
      Mat x(2, 2);
      x << 0, 1, 1, 0;
      return embed(n_qubits, {{g.targets[0], p0}}) +
             embed(n_qubits, {{g.targets[0], p1}, {g.targets[1], x}});
    }
    case GateKind::CZ: {
      Mat z(2, 2);
      z << 1, 0, 0, -1;
      return embed(n_qubits, {{g.targets[0], p0}}) +
             embed(n_qubits, {{g.targets[0], p1}, {g.targets[1], z}});
    }
    default:
      return embed(n_qubits, {{g.targets[0], single_gate_matrix(g)}});
  }
}

inline Mat circuit_unitary(const Circuit& c) {
  const int dim = 1 << c.n_qubits;
  Mat u = Mat::Identity(dim, dim);
  for (const auto& g : c.ops) u = gate_unitary(c.n_qubits, g) * u;
  return u;
}

inline Eigen::VectorXcd run(const Circuit& c, const StateVector& initial) {
  Eigen::VectorXcd v(initial.dim());
  for (std::size_t i = 0; i < initial.dim(); ++i) v(i) = initial.amps()[i];
  return circuit_unitary(c) * v;
}

// Random circuit over the full gate set.
inline Circuit random_circuit(std::mt19937_64& rng, int n_qubits,
                              int max_gates) {
  std::uniform_int_distribution<int> n_gates(1, max_gates);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi,
                                               2 * std::numbers::pi);
  Circuit c(n_qubits);
  const int count = n_gates(rng);
  for (int i = 0; i < count; ++i) {
    auto k = static_cast<GateKind>(kind(rng));
    if (is_two_qubit(k) && n_qubits < 2) k = GateKind::H;
    GateOp g;
    g.kind = k;
    g.targets = {qubit(rng)};
    if (is_two_qubit(k)) {
      int second = qubit(rng);
      while (second == g.targets[0]) second = qubit(rng);
      g.targets.push_back(second);
    }
    if (has_angle(k)) g.theta = angle(rng);
    c.add(g);
  }
  return c;
}

}  // namespace qvl::oracle
