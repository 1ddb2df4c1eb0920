#pragma once

#include <map>
#include <string>
#include <vector>

#include "qnlp/circuit.hpp"
#include "qnlp/rewriter.hpp"

namespace qnlp {

struct AnsatzConfig {
    std::map<std::string, int> qubits_per_type;  // base symbol -> q_b
    int default_qubits = 1;  // 0 disables the default (missing entry then throws)
    int layers = 1;          // d, IQP layer count

    int qubits_for(const std::string& base) const;
};

struct CompiledCircuit {
    CircuitIR circuit;
    ParameterTable params;
};

/// Diagram-to-circuit mapping: live wires get q_b contiguous qubits
/// left to right; single-qubit words get the Euler triple
/// Rz(t1) Rx(t2) Rz(t3); k-qubit words get d IQP layers (H on every
/// qubit, then CRz on each adjacent pair); surviving cups become q_b
/// nested Bell effects (CNOT + H on the control, both qubits
/// postselected on 0); effect words land as their transposed circuit on
/// the partner qubits, which are then postselected; open wires are
/// measured.
///
/// Parameter names are registered into `table` for every word, effect
/// or not, in word order. With allow_new = false a name absent from the
/// table raises ConfigError instead.
CircuitIR compile_into(const RewrittenDiagram& d, const AnsatzConfig& cfg,
                       ParameterTable& table, bool allow_new = true);

CompiledCircuit compile(const RewrittenDiagram& d, const AnsatzConfig& cfg);
CompiledCircuit compile(const Diagram& d, const AnsatzConfig& cfg);

/// H on qubit 0 then a CNOT fan-out: prepares (|0...0> + |1...1>)/sqrt(2).
std::vector<Gate> ghz_circuit(int n);

/// Trainable parameter count over distinct lexicon entries: 3 for a
/// single-qubit word, d*(k-1) for a k-qubit word.
long param_count(const Diagram& d, const AnsatzConfig& cfg);
long param_count(const std::vector<Diagram>& corpus, const AnsatzConfig& cfg);

}  // namespace qnlp
