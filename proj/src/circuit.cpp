#include "qnlp/circuit.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qnlp {

bool is_parameterized(GateKind k) {
    return k == GateKind::RZ || k == GateKind::RX || k == GateKind::CRZ;
}

int arity(GateKind k) { return (k == GateKind::CNOT || k == GateKind::CRZ) ? 2 : 1; }

std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::RZ: return "RZ";
        case GateKind::RX: return "RX";
        case GateKind::CRZ: return "CRZ";
        case GateKind::CNOT: return "CNOT";
    }
    throw std::logic_error("unreachable gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "H") return GateKind::H;
    if (name == "RZ") return GateKind::RZ;
    if (name == "RX") return GateKind::RX;
    if (name == "CRZ") return GateKind::CRZ;
    if (name == "CNOT") return GateKind::CNOT;
    throw ConfigError("unknown gate kind: " + name);
}

size_t ParameterTable::ensure(const std::string& name, double value) {
    auto it = index_.find(name);
    if (it != index_.end()) {
        return it->second;
    }
    names_.push_back(name);
    values_.push_back(value);
    index_[name] = names_.size() - 1;
    return names_.size() - 1;
}

double ParameterTable::value(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw ConfigError("unbound parameter: " + name);
    }
    return values_[it->second];
}

void ParameterTable::set(const std::string& name, double value) {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw ConfigError("unbound parameter: " + name);
    }
    values_[it->second] = value;
}

void ParameterTable::set_values(const std::vector<double>& values) {
    if (values.size() != values_.size()) {
        throw ConfigError("parameter value count mismatch");
    }
    values_ = values;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_qasm_like(const CircuitIR& c, const ParameterTable& p) {
    std::ostringstream out;
    for (const auto& g : c.gates) {
        out << gate_name(g.kind) << " q[" << g.qubits[0] << "]";
        for (size_t i = 1; i < g.qubits.size(); ++i) {
            out << ",q[" << g.qubits[i] << "]";
        }
        if (g.param) {
            out << " theta=" << format_number(p.value(*g.param));
        }
        out << "\n";
    }
    for (int q : c.postselect) {
        out << "postselect q[" << q << "] 0\n";
    }
    for (size_t i = 0; i < c.measured.size(); ++i) {
        out << "measure q[" << c.measured[i] << "] -> c[" << i << "]\n";
    }
    return out.str();
}

std::string circuit_to_json(const CircuitIR& c, const ParameterTable& p) {
    nlohmann::json doc;
    doc["width"] = c.width;
    doc["gates"] = nlohmann::json::array();
    for (const auto& g : c.gates) {
        nlohmann::json jg{{"kind", gate_name(g.kind)}, {"qubits", g.qubits}};
        if (g.param) {
            jg["param"] = *g.param;
        }
        doc["gates"].push_back(std::move(jg));
    }
    doc["postselect"] = nlohmann::json::array();
    for (int q : c.postselect) {
        doc["postselect"].push_back({q, 0});
    }
    doc["measured"] = c.measured;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& name : p.names()) {
        params[name] = p.value(name);
    }
    doc["params"] = std::move(params);
    return doc.dump();
}

}  // namespace qnlp
