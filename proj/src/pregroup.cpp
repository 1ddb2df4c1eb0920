#include "qnlp/pregroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnlp {

AtomicType left_adjoint(const AtomicType& t) { return {t.base, t.z - 1}; }

AtomicType right_adjoint(const AtomicType& t) { return {t.base, t.z + 1}; }

bool reduces_pair(const AtomicType& a, const AtomicType& b) {
    return a.base == b.base && a.z + 1 == b.z;
}

PregroupType concat(const PregroupType& a, const PregroupType& b) {
    PregroupType out = a;
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return out;
}

std::optional<LinkSet> reduce_to_sentence(const TypeSequence& seq) {
    if (seq.empty()) {
        return std::nullopt;
    }
    // Stack of (atom, original index).
    std::vector<std::pair<AtomicType, int>> stack;
    LinkSet links;
    for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
        if (!stack.empty() && reduces_pair(stack.back().first, seq[i])) {
            links.cups.emplace_back(stack.back().second, i);
            stack.pop_back();
        } else {
            stack.emplace_back(seq[i], i);
        }
    }
    if (stack.size() != 1 || stack.front().first != AtomicType{kSentenceBase, 0}) {
        return std::nullopt;
    }
    links.open.push_back(stack.front().second);
    std::sort(links.cups.begin(), links.cups.end());
    return links;
}

std::string render_type(const AtomicType& t) {
    std::string out = t.base;
    const char* suffix = t.z < 0 ? ".l" : ".r";
    for (int i = 0; i < std::abs(t.z); ++i) {
        out += suffix;
    }
    return out;
}

std::vector<std::string> render_type(const PregroupType& t) {
    std::vector<std::string> out;
    out.reserve(t.atoms.size());
    for (const auto& atom : t.atoms) {
        out.push_back(render_type(atom));
    }
    return out;
}

AtomicType parse_atomic_type(const std::string& text) {
    const auto dot = text.find('.');
    std::string base = text.substr(0, dot);
    if (base.empty()) {
        throw std::invalid_argument("atomic type has empty base: '" + text + "'");
    }
    AtomicType out{base, 0};
    if (dot == std::string::npos) {
        return out;
    }
    int direction = 0;  // -1 for .l chain, +1 for .r chain
    std::string rest = text.substr(dot);
    while (!rest.empty()) {
        int step = 0;
        if (rest.rfind(".l", 0) == 0) {
            step = -1;
        } else if (rest.rfind(".r", 0) == 0) {
            step = +1;
        } else {
            throw std::invalid_argument("malformed adjoint suffix in '" + text + "'");
        }
        if (direction != 0 && step != direction) {
            throw std::invalid_argument("mixed .l/.r suffixes in '" + text + "'");
        }
        direction = step;
        out.z += step;
        rest = rest.substr(2);
    }
    return out;
}

PregroupType parse_pregroup_type(const std::vector<std::string>& parts) {
    PregroupType out;
    out.atoms.reserve(parts.size());
    for (const auto& part : parts) {
        out.atoms.push_back(parse_atomic_type(part));
    }
    return out;
}

}  // namespace qnlp
