#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnlp/pregroup.hpp"

namespace qnlp {

/// Malformed or invalid lexicon content; the message names the
/// offending entry.
struct LexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LexiconEntry {
    std::string surface;
    PregroupType type;
    std::string entry_id;  // surface + "#" + ordinal among this surface's entries

    bool operator==(const LexiconEntry&) const = default;
};

/// Word-to-type mapping. Immutable after construction; concurrent reads
/// are safe. Surfaces are matched exactly (case-sensitive UTF-8 bytes).
class Lexicon {
  public:
    Lexicon() = default;

    /// Validates and indexes the entries: surfaces must be non-empty
    /// without internal whitespace, types non-empty, and every base
    /// symbol declared. Throws LexiconError otherwise.
    Lexicon(std::set<std::string> declared_symbols, std::vector<LexiconEntry> entries);

    /// All entries for an exact surface match, in file order. Unknown
    /// words give an empty result, not an error.
    std::vector<LexiconEntry> lookup(const std::string& surface) const;

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    const std::set<std::string>& declared_symbols() const { return declared_symbols_; }

    bool operator==(const Lexicon& other) const {
        return declared_symbols_ == other.declared_symbols_ && entries_ == other.entries_;
    }

  private:
    std::set<std::string> declared_symbols_;
    std::vector<LexiconEntry> entries_;  // file order
    std::unordered_map<std::string, std::vector<int>> by_surface_;
};

/// Builds a Lexicon from raw (surface, rendered type) rows, assigning
/// entry ids by per-surface ordinal.
Lexicon make_lexicon(const std::set<std::string>& symbols,
                     const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);

/// File format: JSON object { "symbols": [...], "entries": [ { "surface", "type" } ... ] }
/// with each type element using the base(.l|.r)* rendering.
Lexicon load_lexicon(const std::string& path);
Lexicon lexicon_from_json(const std::string& text);
std::string lexicon_to_json(const Lexicon& lex);

/// Built-in lexicon covering the two shipped example sentences.
Lexicon seed_lexicon();

}  // namespace qnlp
