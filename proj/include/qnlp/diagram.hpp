#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qnlp/lexicon.hpp"
#include "qnlp/pregroup.hpp"

namespace qnlp {

struct UnknownWordError : std::runtime_error {
    explicit UnknownWordError(const std::string& token)
        : std::runtime_error("unknown word: '" + token + "'"), token(token) {}
    UnknownWordError(const std::string& token, const std::string& message)
        : std::runtime_error(message), token(token) {}
    std::string token;
};

struct NoParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguityCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WordBox {
    std::string entry_id;
    TypeSequence wires;  // output wire types, left to right

    bool operator==(const WordBox&) const = default;
};

/// String diagram for one sentence: word boxes whose concatenated wires
/// form the flattened sequence, cups over that sequence, and the open
/// wires carrying the residual sentence type.
struct Diagram {
    std::vector<WordBox> words;
    LinkSet links;

    TypeSequence flattened() const;
    /// Word index owning a flattened wire index.
    int word_of_wire(int wire) const;

    bool operator==(const Diagram&) const = default;
};

inline constexpr int kAssignmentCap = 10000;

std::vector<std::string> tokenize(const std::string& sentence);

/// Enumerates type assignments (Cartesian product over per-word lexicon
/// entries, in lexicon order) and returns the diagram of the first
/// assignment that reduces to the sentence type. Throws
/// UnknownWordError, NoParseError, or AmbiguityCapError (more than
/// kAssignmentCap assignments tried without success while more remain).
Diagram parse_sentence(const std::vector<std::string>& tokens, const Lexicon& lex);

/// Canonical JSON: sorted keys, cups sorted by first index;
/// diagram_from_json(to_json(d)) == d.
std::string to_json(const Diagram& d);
Diagram diagram_from_json(const std::string& text);

/// DOT rendering: one node per word box (w0..), one per cup (c0..),
/// one terminal per open wire (o0..), edges following wires.
std::string to_dot(const Diagram& d);

}  // namespace qnlp
