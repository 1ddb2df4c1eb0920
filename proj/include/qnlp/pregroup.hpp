#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qnlp {

/// One atomic grammar type: a base symbol plus an adjoint ordinal.
/// z = 0 is the plain type, z = -1 its left adjoint (rendered "x.l"),
/// z = +1 its right adjoint ("x.r"); adjoints iterate ("x.l.l" has z = -2).
struct AtomicType {
    std::string base;
    int z = 0;

    bool operator==(const AtomicType&) const = default;
};

using TypeSequence = std::vector<AtomicType>;

/// A pregroup type: an ordered sequence of atomic types. The empty
/// sequence is the unit, and concatenation is the monoid product.
struct PregroupType {
    TypeSequence atoms;

    bool operator==(const PregroupType&) const = default;
};

/// Cups plus leftover open wires of one reduction over a flattened
/// atomic-type sequence. Cups are index pairs (i, j) with i < j,
/// pairwise disjoint and non-crossing; cups and open wires together
/// partition the index range.
struct LinkSet {
    std::vector<std::pair<int, int>> cups;  // sorted by first index
    std::vector<int> open;                  // ascending

    bool operator==(const LinkSet&) const = default;
};

inline const std::string kSentenceBase = "s";

AtomicType left_adjoint(const AtomicType& t);
AtomicType right_adjoint(const AtomicType& t);

/// True iff a·b -> 1, i.e. same base and a.z + 1 == b.z. Covers both
/// contraction directions (a^l·a and a·a^r).
bool reduces_pair(const AtomicType& a, const AtomicType& b);

PregroupType concat(const PregroupType& a, const PregroupType& b);

/// Left-to-right stack matcher: whenever the stack top reduces against
/// the incoming atom, pop it and record a cup; otherwise push. Succeeds
/// iff the residue is exactly [s]; the surviving index is the open
/// sentence wire. Greedy: no backtracking within one type assignment,
/// so reducible sequences with colliding bases can be missed.
std::optional<LinkSet> reduce_to_sentence(const TypeSequence& seq);

/// Rendering used by lexicon files and CLI output: "n.r", "tau.l.l", ...
std::string render_type(const AtomicType& t);
std::vector<std::string> render_type(const PregroupType& t);

/// Inverse of render_type. Throws std::invalid_argument on malformed
/// text (empty base, mixed ".l"/".r" suffixes, stray dots).
AtomicType parse_atomic_type(const std::string& text);
PregroupType parse_pregroup_type(const std::vector<std::string>& parts);

}  // namespace qnlp
