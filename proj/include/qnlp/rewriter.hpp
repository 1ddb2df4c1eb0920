#pragma once

#include <string>
#include <vector>

#include "qnlp/diagram.hpp"

namespace qnlp {

/// A word occurrence converted from state to effect: its own wires are
/// deleted and its transposed circuit lands on the partner wires at
/// compile time.
struct EffectWord {
    int word_index = 0;
    std::vector<int> partner_wires;  // ascending flattened wire indices
    int removed_cups = 0;

    bool operator==(const EffectWord&) const = default;
};

struct RewrittenDiagram {
    Diagram diagram;  // original word boxes and wire types
    std::vector<EffectWord> effects;         // ascending by word_index
    std::vector<std::pair<int, int>> cups;   // surviving cups, sorted
    std::vector<int> open;                   // unchanged open wires

    bool is_effect(int word_index) const;
    /// Flattened wire indices still carried by qubits (wires of all
    /// non-effect words), ascending.
    std::vector<int> live_wires() const;

    bool operator==(const RewrittenDiagram&) const = default;
};

/// Wraps a diagram without rewriting anything.
RewrittenDiagram as_rewritten(const Diagram& d);

/// Cup-elimination pass: every word all of whose output wires are
/// consumed by cups, and whose cup partners form a contiguous,
/// order-reversed run of live wires outside the word, is turned into a
/// transposed effect on those partner wires and its cups are dropped.
/// Iterates until fixpoint; open wires are unchanged.
RewrittenDiagram remove_cups(const Diagram& d);

/// Diagram JSON plus a "rewritten": true annotation and the effect_words list.
std::string to_json(const RewrittenDiagram& d);

}  // namespace qnlp
