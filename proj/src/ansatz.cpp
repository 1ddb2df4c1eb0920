#include "qnlp/ansatz.hpp"

#include <algorithm>
#include <set>

namespace qnlp {

int AnsatzConfig::qubits_for(const std::string& base) const {
    auto it = qubits_per_type.find(base);
    if (it != qubits_per_type.end()) {
        if (it->second < 1) {
            throw ConfigError("qubits_per_type for '" + base + "' must be positive");
        }
        return it->second;
    }
    if (default_qubits < 1) {
        throw ConfigError("no qubit count configured for type '" + base + "'");
    }
    return default_qubits;
}

namespace {

std::string param_name(const std::string& entry_id, int slot) {
    return entry_id + "__" + std::to_string(slot);
}

int word_param_count(int k, int layers) { return k == 1 ? 3 : layers * (k - 1); }

// Word circuit on local qubits 0..k-1 with parameter names attached.
std::vector<Gate> word_gates(const std::string& entry_id, int k, int layers) {
    std::vector<Gate> gates;
    if (k == 1) {
        gates.push_back({GateKind::RZ, {0}, param_name(entry_id, 0)});
        gates.push_back({GateKind::RX, {0}, param_name(entry_id, 1)});
        gates.push_back({GateKind::RZ, {0}, param_name(entry_id, 2)});
        return gates;
    }
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < k; ++q) {
            gates.push_back({GateKind::H, {q}, std::nullopt});
        }
        for (int i = 0; i + 1 < k; ++i) {
            gates.push_back({GateKind::CRZ, {i, i + 1}, param_name(entry_id, layer * (k - 1) + i)});
        }
    }
    return gates;
}

}  // namespace

CircuitIR compile_into(const RewrittenDiagram& rw, const AnsatzConfig& cfg,
                       ParameterTable& table, bool allow_new) {
    const Diagram& d = rw.diagram;
    const TypeSequence seq = d.flattened();

    // Qubit allocation: q_b contiguous qubits per live wire, left to right.
    std::vector<int> wire_start(seq.size(), -1);
    std::vector<int> wire_count(seq.size(), 0);
    int width = 0;
    for (int wire : rw.live_wires()) {
        wire_start[wire] = width;
        wire_count[wire] = cfg.qubits_for(seq[wire].base);
        width += wire_count[wire];
    }

    // Total qubit count per word; decides Euler vs IQP and the
    // parameter slots, also for words rewritten into effects.
    std::vector<int> word_k(d.words.size(), 0);
    std::vector<int> word_first_wire(d.words.size(), 0);
    {
        int wire = 0;
        for (size_t w = 0; w < d.words.size(); ++w) {
            word_first_wire[w] = wire;
            for (const auto& atom : d.words[w].wires) {
                word_k[w] += cfg.qubits_for(atom.base);
                ++wire;
            }
        }
    }

    for (size_t w = 0; w < d.words.size(); ++w) {
        const auto& entry_id = d.words[w].entry_id;
        for (int slot = 0; slot < word_param_count(word_k[w], cfg.layers); ++slot) {
            const std::string name = param_name(entry_id, slot);
            if (allow_new) {
                table.ensure(name);
            } else if (!table.contains(name)) {
                throw ConfigError("parameter '" + name + "' is not in the model");
            }
        }
    }

    CircuitIR out;
    out.width = width;
    std::vector<int> postselect;

    // State words on their own qubit blocks.
    for (size_t w = 0; w < d.words.size(); ++w) {
        if (rw.is_effect(static_cast<int>(w))) {
            continue;
        }
        const int base_qubit = wire_start[word_first_wire[w]];
        for (Gate g : word_gates(d.words[w].entry_id, word_k[w], cfg.layers)) {
            for (int& q : g.qubits) {
                q += base_qubit;
            }
            out.gates.push_back(std::move(g));
        }
    }

    // Effect words: transposed circuit on the partner qubits. Every
    // gate matrix here is symmetric, so the transpose is the same gate
    // list in reverse; the nested cups flip the qubit order.
    for (const auto& effect : rw.effects) {
        const int w = effect.word_index;
        std::vector<int> targets;  // ascending partner qubits
        for (int p : effect.partner_wires) {
            for (int q = 0; q < wire_count[p]; ++q) {
                targets.push_back(wire_start[p] + q);
            }
        }
        const int k = word_k[w];
        if (static_cast<int>(targets.size()) != k) {
            throw ConfigError("effect word '" + d.words[w].entry_id +
                              "' does not match its partner qubits");
        }
        auto gates = word_gates(d.words[w].entry_id, k, cfg.layers);
        std::reverse(gates.begin(), gates.end());
        for (Gate g : gates) {
            for (int& q : g.qubits) {
                q = targets[k - 1 - q];
            }
            out.gates.push_back(std::move(g));
        }
        for (int q : targets) {
            postselect.push_back(q);
        }
    }

    // Surviving cups as nested Bell effects.
    for (const auto& [left, right] : rw.cups) {
        if (wire_count[left] != wire_count[right]) {
            throw ConfigError("cup joins wires of different qubit counts");
        }
        const int q = wire_count[left];
        for (int m = 0; m < q; ++m) {
            const int lq = wire_start[left] + m;
            const int rq = wire_start[right] + (q - 1 - m);
            out.gates.push_back({GateKind::CNOT, {lq, rq}, std::nullopt});
            out.gates.push_back({GateKind::H, {lq}, std::nullopt});
            postselect.push_back(lq);
            postselect.push_back(rq);
        }
    }

    std::sort(postselect.begin(), postselect.end());
    out.postselect = std::move(postselect);
    for (int wire : rw.open) {
        for (int q = 0; q < wire_count[wire]; ++q) {
            out.measured.push_back(wire_start[wire] + q);
        }
    }
    return out;
}

CompiledCircuit compile(const RewrittenDiagram& d, const AnsatzConfig& cfg) {
    CompiledCircuit out;
    out.circuit = compile_into(d, cfg, out.params);
    return out;
}

CompiledCircuit compile(const Diagram& d, const AnsatzConfig& cfg) {
    return compile(as_rewritten(d), cfg);
}

std::vector<Gate> ghz_circuit(int n) {
    if (n < 1) {
        throw std::invalid_argument("ghz_circuit needs at least one qubit");
    }
    std::vector<Gate> gates;
    gates.push_back({GateKind::H, {0}, std::nullopt});
    for (int i = 1; i < n; ++i) {
        gates.push_back({GateKind::CNOT, {0, i}, std::nullopt});
    }
    return gates;
}

long param_count(const Diagram& d, const AnsatzConfig& cfg) {
    return param_count(std::vector<Diagram>{d}, cfg);
}

long param_count(const std::vector<Diagram>& corpus, const AnsatzConfig& cfg) {
    std::set<std::string> seen;
    long total = 0;
    for (const auto& d : corpus) {
        for (const auto& w : d.words) {
            if (!seen.insert(w.entry_id).second) {
                continue;
            }
            int k = 0;
            for (const auto& atom : w.wires) {
                k += cfg.qubits_for(atom.base);
            }
            total += word_param_count(k, cfg.layers);
        }
    }
    return total;
}

}  // namespace qnlp
