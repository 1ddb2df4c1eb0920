#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "qnlp/circuit.hpp"

namespace qnlp {

/// Dense state over n qubits. Qubit 0 is the most significant bit of
/// the basis index (qubit i maps to bit n-1-i). The squared norm stays
/// in [0, 1]: gates are unitary and postselection only projects.
struct Statevector {
    int n = 0;
    Eigen::VectorXcd amps;  // size 2^n

    static Statevector zero(int n);
    double squared_norm() const { return amps.squaredNorm(); }
};

inline constexpr int kMaxSimQubits = 24;

/// Fixed gate matrices:
///   H = (1/sqrt 2) [[1,1],[1,-1]]
///   Rz(t) = diag(e^{-it/2}, e^{it/2})
///   Rx(t) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]]
///   CRz(t) = diag(1, 1, e^{-it/2}, e^{it/2}) on (control, target)
Eigen::Matrix2cd gate_matrix_1q(GateKind k, double theta = 0.0);
Eigen::Matrix4cd gate_matrix_2q(GateKind k, double theta = 0.0);

/// Applies one gate. theta must be supplied exactly when the gate kind
/// is parameterized; qubit indices must be distinct and within range.
Statevector apply_gate(Statevector sv, const Gate& g, std::optional<double> theta = std::nullopt);

/// Projects one qubit onto |outcome> and drops it (width n-1), without
/// renormalizing. Remaining qubits keep their relative order.
Statevector postselect(Statevector sv, int qubit, int outcome = 0);

struct OutcomeDistribution {
    /// Post-postselection amplitude per measured-qubit bitstring, keyed
    /// in the declared measurement order (all 2^m outcomes present).
    std::map<std::string, std::complex<double>> raw_amplitudes;
    std::map<std::string, double> probabilities;  // normalized; zeros if degenerate
    double success_weight = 0.0;                  // sum |amp|^2 before normalization
};

/// Applies the gate list only (no postselection or measurement).
Statevector run_gates(const CircuitIR& c, const ParameterTable& p);

/// Full execution: |0...0>, all gates, all postselections, read the
/// measured qubits in their declared order. Zero success weight is not
/// an error; the probabilities map is then all zeros.
OutcomeDistribution run(const CircuitIR& c, const ParameterTable& p);

}  // namespace qnlp
