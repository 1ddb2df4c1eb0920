#include "qnlp/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qnlp {

namespace {

bool has_whitespace(const std::string& s) {
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            return true;
        }
    }
    return false;
}

}  // namespace

Lexicon::Lexicon(std::set<std::string> declared_symbols, std::vector<LexiconEntry> entries)
    : declared_symbols_(std::move(declared_symbols)), entries_(std::move(entries)) {
    std::set<std::string> seen_ids;
    for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
        const auto& e = entries_[i];
        if (e.surface.empty() || has_whitespace(e.surface)) {
            throw LexiconError("entry '" + e.entry_id + "': surface must be non-empty without whitespace");
        }
        if (e.type.atoms.empty()) {
            throw LexiconError("entry '" + e.entry_id + "': type sequence is empty");
        }
        for (const auto& atom : e.type.atoms) {
            if (!declared_symbols_.count(atom.base)) {
                throw LexiconError("entry '" + e.entry_id + "': undeclared symbol '" + atom.base + "'");
            }
        }
        if (!seen_ids.insert(e.entry_id).second) {
            throw LexiconError("duplicate entry id '" + e.entry_id + "'");
        }
        by_surface_[e.surface].push_back(i);
    }
}

std::vector<LexiconEntry> Lexicon::lookup(const std::string& surface) const {
    std::vector<LexiconEntry> out;
    auto it = by_surface_.find(surface);
    if (it == by_surface_.end()) {
        return out;
    }
    out.reserve(it->second.size());
    for (int idx : it->second) {
        out.push_back(entries_[idx]);
    }
    return out;
}

Lexicon make_lexicon(const std::set<std::string>& symbols,
                     const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
    std::vector<LexiconEntry> entries;
    entries.reserve(rows.size());
    std::unordered_map<std::string, int> ordinals;
    for (const auto& [surface, rendered] : rows) {
        PregroupType type;
        try {
            type = parse_pregroup_type(rendered);
        } catch (const std::invalid_argument& e) {
            throw LexiconError("entry for surface '" + surface + "': " + e.what());
        }
        int ordinal = ordinals[surface]++;
        entries.push_back({surface, std::move(type), surface + "#" + std::to_string(ordinal)});
    }
    return Lexicon(symbols, std::move(entries));
}

Lexicon lexicon_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LexiconError(std::string("lexicon is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("symbols") || !doc.contains("entries")) {
        throw LexiconError("lexicon must be an object with 'symbols' and 'entries'");
    }
    std::set<std::string> symbols;
    for (const auto& s : doc.at("symbols")) {
        symbols.insert(s.get<std::string>());
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (const auto& entry : doc.at("entries")) {
        if (!entry.contains("surface") || !entry.contains("type")) {
            throw LexiconError("lexicon entry missing 'surface' or 'type': " + entry.dump());
        }
        rows.emplace_back(entry.at("surface").get<std::string>(),
                          entry.at("type").get<std::vector<std::string>>());
    }
    return make_lexicon(symbols, rows);
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open lexicon file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return lexicon_from_json(buf.str());
}

std::string lexicon_to_json(const Lexicon& lex) {
    nlohmann::json doc;
    doc["symbols"] = lex.declared_symbols();
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : lex.entries()) {
        doc["entries"].push_back({{"surface", e.surface}, {"type", render_type(e.type)}});
    }
    return doc.dump(2);
}

Lexicon seed_lexicon() {
    return make_lexicon({"pi", "n", "o", "k1", "tau", "s"},
                        {
                            {"Main", {"pi"}},
                            {"School", {"o"}},
                            {"jaata", {"o.r", "pi.r", "s", "tau.l"}},
                            {"hu", {"tau"}},
                            {"Mukesh", {"n"}},
                            {"ne", {"k1.l"}},
                            {"khaana", {"k1", "o"}},
                            {"khaya", {"o.r", "n.r", "s"}},
                        });
}

}  // namespace qnlp
