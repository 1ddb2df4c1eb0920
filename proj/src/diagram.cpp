#include "qnlp/diagram.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace qnlp {

TypeSequence Diagram::flattened() const {
    TypeSequence out;
    for (const auto& w : words) {
        out.insert(out.end(), w.wires.begin(), w.wires.end());
    }
    return out;
}

int Diagram::word_of_wire(int wire) const {
    int offset = 0;
    for (int w = 0; w < static_cast<int>(words.size()); ++w) {
        offset += static_cast<int>(words[w].wires.size());
        if (wire < offset) {
            return w;
        }
    }
    throw std::out_of_range("wire index " + std::to_string(wire) + " out of range");
}

std::vector<std::string> tokenize(const std::string& sentence) {
    std::vector<std::string> tokens;
    std::istringstream in(sentence);
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

Diagram parse_sentence(const std::vector<std::string>& tokens, const Lexicon& lex) {
    if (tokens.empty()) {
        throw NoParseError("empty token sequence");
    }
    std::vector<std::vector<LexiconEntry>> choices;
    choices.reserve(tokens.size());
    for (const auto& tok : tokens) {
        auto entries = lex.lookup(tok);
        if (entries.empty()) {
            throw UnknownWordError(tok);
        }
        choices.push_back(std::move(entries));
    }

    // Odometer over per-word entry lists, leftmost word slowest, so
    // assignments come out in lexicon order.
    std::vector<size_t> pick(tokens.size(), 0);
    long tried = 0;
    while (true) {
        Diagram d;
        d.words.reserve(tokens.size());
        for (size_t i = 0; i < tokens.size(); ++i) {
            const auto& e = choices[i][pick[i]];
            d.words.push_back({e.entry_id, e.type.atoms});
        }
        if (auto links = reduce_to_sentence(d.flattened())) {
            d.links = std::move(*links);
            return d;
        }
        ++tried;
        // Advance the odometer; rightmost position fastest.
        int pos = static_cast<int>(pick.size()) - 1;
        while (pos >= 0 && ++pick[pos] == choices[pos].size()) {
            pick[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            throw NoParseError("no type assignment reduces to the sentence type");
        }
        if (tried >= kAssignmentCap) {
            throw AmbiguityCapError("more than " + std::to_string(kAssignmentCap) +
                                    " type assignments tried without a parse");
        }
    }
}

std::string to_json(const Diagram& d) {
    nlohmann::json doc;
    doc["words"] = nlohmann::json::array();
    for (const auto& w : d.words) {
        nlohmann::json wires = nlohmann::json::array();
        for (const auto& t : w.wires) {
            wires.push_back(render_type(t));
        }
        doc["words"].push_back({{"entry", w.entry_id}, {"wires", wires}});
    }
    doc["cups"] = nlohmann::json::array();
    for (const auto& [i, j] : d.links.cups) {
        doc["cups"].push_back({i, j});
    }
    doc["open"] = d.links.open;
    return doc.dump();
}

Diagram diagram_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    Diagram d;
    for (const auto& w : doc.at("words")) {
        WordBox box;
        box.entry_id = w.at("entry").get<std::string>();
        for (const auto& t : w.at("wires")) {
            box.wires.push_back(parse_atomic_type(t.get<std::string>()));
        }
        d.words.push_back(std::move(box));
    }
    for (const auto& cup : doc.at("cups")) {
        d.links.cups.emplace_back(cup.at(0).get<int>(), cup.at(1).get<int>());
    }
    d.links.open = doc.at("open").get<std::vector<int>>();
    return d;
}

std::string to_dot(const Diagram& d) {
    const auto seq = d.flattened();
    std::ostringstream out;
    out << "graph diagram {\n";
    out << "  rankdir=TB;\n";
    for (size_t w = 0; w < d.words.size(); ++w) {
        out << "  w" << w << " [shape=box,label=\"" << d.words[w].entry_id << "\"];\n";
    }
    for (size_t c = 0; c < d.links.cups.size(); ++c) {
        out << "  c" << c << " [shape=point];\n";
    }
    for (size_t o = 0; o < d.links.open.size(); ++o) {
        out << "  o" << o << " [shape=plaintext,label=\""
            << render_type(seq[d.links.open[o]]) << "\"];\n";
    }
    for (size_t c = 0; c < d.links.cups.size(); ++c) {
        const auto& [i, j] = d.links.cups[c];
        out << "  w" << d.word_of_wire(i) << " -- c" << c << " [label=\""
            << render_type(seq[i]) << "\"];\n";
        out << "  w" << d.word_of_wire(j) << " -- c" << c << " [label=\""
            << render_type(seq[j]) << "\"];\n";
    }
    for (size_t o = 0; o < d.links.open.size(); ++o) {
        out << "  w" << d.word_of_wire(d.links.open[o]) << " -- o" << o << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace qnlp
