#include "qnlp/rewriter.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qnlp {

bool RewrittenDiagram::is_effect(int word_index) const {
    return std::any_of(effects.begin(), effects.end(),
                       [&](const EffectWord& e) { return e.word_index == word_index; });
}

std::vector<int> RewrittenDiagram::live_wires() const {
    std::vector<int> out;
    int wire = 0;
    for (int w = 0; w < static_cast<int>(diagram.words.size()); ++w) {
        for (size_t k = 0; k < diagram.words[w].wires.size(); ++k, ++wire) {
            if (!is_effect(w)) {
                out.push_back(wire);
            }
        }
    }
    return out;
}

RewrittenDiagram as_rewritten(const Diagram& d) {
    return {d, {}, d.links.cups, d.links.open};
}

namespace {

// Per-wire consumer while the pass runs.
enum class WireState { Open, Cupped, EffectTarget, Dead };

struct PassState {
    std::vector<WireState> state;
    std::vector<int> partner;  // valid when state == Cupped
};

// One wire is eligible to vanish with its word when its whole word is
// cup-consumed and the partner run is contiguous among non-dead wires.
bool eligible(const Diagram& d, const PassState& ps, int word, int first_wire) {
    const int m = static_cast<int>(d.words[word].wires.size());
    std::vector<int> partners;
    partners.reserve(m);
    for (int v = first_wire; v < first_wire + m; ++v) {
        if (ps.state[v] != WireState::Cupped) {
            return false;
        }
        const int p = ps.partner[v];
        if (p >= first_wire && p < first_wire + m) {
            return false;  // internal cup, nothing to transpose onto
        }
        partners.push_back(p);
    }
    // Nested cups put partners in reverse order.
    for (int i = 0; i + 1 < m; ++i) {
        if (partners[i] <= partners[i + 1]) {
            return false;
        }
    }
    // Contiguous among live wires: only dead wires may sit between them.
    for (int i = m - 1; i > 0; --i) {
        for (int w = partners[i] + 1; w < partners[i - 1]; ++w) {
            if (ps.state[w] != WireState::Dead) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

RewrittenDiagram remove_cups(const Diagram& d) {
    const int n = static_cast<int>(d.flattened().size());
    PassState ps;
    ps.state.assign(n, WireState::Open);
    ps.partner.assign(n, -1);
    for (const auto& [i, j] : d.links.cups) {
        ps.state[i] = ps.state[j] = WireState::Cupped;
        ps.partner[i] = j;
        ps.partner[j] = i;
    }

    std::vector<int> first_wire(d.words.size(), 0);
    for (size_t w = 1; w < d.words.size(); ++w) {
        first_wire[w] = first_wire[w - 1] + static_cast<int>(d.words[w - 1].wires.size());
    }

    RewrittenDiagram out;
    out.diagram = d;
    out.open = d.links.open;

    std::vector<bool> is_effect(d.words.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int w = 0; w < static_cast<int>(d.words.size()); ++w) {
            if (is_effect[w] || !eligible(d, ps, w, first_wire[w])) {
                continue;
            }
            const int m = static_cast<int>(d.words[w].wires.size());
            EffectWord effect;
            effect.word_index = w;
            effect.removed_cups = m;
            for (int v = first_wire[w]; v < first_wire[w] + m; ++v) {
                const int p = ps.partner[v];
                effect.partner_wires.push_back(p);
                ps.state[p] = WireState::EffectTarget;
                ps.state[v] = WireState::Dead;
            }
            std::sort(effect.partner_wires.begin(), effect.partner_wires.end());
            out.effects.push_back(std::move(effect));
            is_effect[w] = true;
            changed = true;
        }
    }

    for (const auto& [i, j] : d.links.cups) {
        if (ps.state[i] == WireState::Cupped) {
            out.cups.emplace_back(i, j);
        }
    }
    std::sort(out.cups.begin(), out.cups.end());
    std::sort(out.effects.begin(), out.effects.end(),
              [](const EffectWord& a, const EffectWord& b) { return a.word_index < b.word_index; });
    return out;
}

std::string to_json(const RewrittenDiagram& d) {
    nlohmann::json doc = nlohmann::json::parse(to_json(d.diagram));
    doc["rewritten"] = true;
    doc["cups"] = nlohmann::json::array();
    for (const auto& [i, j] : d.cups) {
        doc["cups"].push_back({i, j});
    }
    doc["open"] = d.open;
    doc["effect_words"] = nlohmann::json::array();
    for (const auto& e : d.effects) {
        doc["effect_words"].push_back({{"word", e.word_index},
                                       {"partners", e.partner_wires},
                                       {"removed_cups", e.removed_cups}});
    }
    return doc.dump();
}

}  // namespace qnlp
