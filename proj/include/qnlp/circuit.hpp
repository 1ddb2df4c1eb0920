#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qnlp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GateKind { H, RZ, RX, CRZ, CNOT };

bool is_parameterized(GateKind k);
int arity(GateKind k);
std::string gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
    GateKind kind;
    std::vector<int> qubits;  // control first for two-qubit kinds
    std::optional<std::string> param;  // name into a ParameterTable

    bool operator==(const Gate&) const = default;
};

/// Ordered, named parameter store shared across circuits. Names are
/// entry_id + "__" + slot index, so the same lexicon entry maps to the
/// same parameters in every sentence.
class ParameterTable {
  public:
    /// Registers a name if absent; returns its index either way.
    size_t ensure(const std::string& name, double value = 0.0);
    bool contains(const std::string& name) const { return index_.count(name) > 0; }
    double value(const std::string& name) const;
    void set(const std::string& name, double value);

    size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::vector<double> values() const { return values_; }
    void set_values(const std::vector<double>& values);

  private:
    std::vector<std::string> names_;
    std::vector<double> values_;
    std::unordered_map<std::string, size_t> index_;
};

struct CircuitIR {
    int width = 0;
    std::vector<Gate> gates;
    std::vector<int> postselect;  // qubits required to read 0, ascending
    std::vector<int> measured;    // declared readout order
};

/// Flat deterministic text: one gate per line, then postselect lines,
/// then measure lines. Throws ConfigError on an unbound parameter.
std::string to_qasm_like(const CircuitIR& c, const ParameterTable& p);

std::string circuit_to_json(const CircuitIR& c, const ParameterTable& p);

/// %.12g rendering used everywhere a number has to be byte-stable.
std::string format_number(double v);

}  // namespace qnlp
