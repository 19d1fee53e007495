#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "maplink/errors.hpp"
#include "maplink/linkage.hpp"
#include "maplink/text.hpp"

namespace maplink {

enum class MatchPolicy {
    Exact,            // byte-for-byte
    CaseInsensitive,  // case-folded comparison (default)
    Normalized,       // case-folded with leading/trailing punctuation stripped
};

/// A multiword place name to look for, in reading order.
struct Query {
    std::vector<std::string> words;
    MatchPolicy policy{MatchPolicy::CaseInsensitive};
};

inline void validate_query(const Query& q) {
    if (q.words.empty()) throw InputError("query has no words");
    for (const std::string& w : q.words) {
        if (w.empty()) throw InputError("query contains an empty word");
    }
}

/// An ordered run of distinct, pairwise-adjacent labels whose texts spell
/// out the query.
struct LabelPath {
    std::vector<int> label_ids;
};

inline std::string match_form(std::string_view word, MatchPolicy policy) {
    switch (policy) {
        case MatchPolicy::Exact:
            return std::string(word);
        case MatchPolicy::CaseInsensitive:
            return text::fold(word);
        case MatchPolicy::Normalized:
            return text::fold(text::strip_affix_punct(word));
    }
    return std::string(word);
}

namespace detail {

struct PhraseSearch {
    const std::vector<std::string>* query_forms{nullptr};
    const std::unordered_map<int, std::string>* label_forms{nullptr};
    const std::unordered_map<int, std::vector<int>>* adjacency{nullptr};
    std::vector<int> path;
    std::vector<LabelPath>* out{nullptr};
    bool stop_at_first{false};
    bool found{false};

    bool matches(int id, std::size_t word_index) const {
        return label_forms->at(id) == (*query_forms)[word_index];
    }

    void extend(int id, std::size_t word_index) {
        path.push_back(id);
        if (word_index + 1 == query_forms->size()) {
            found = true;
            if (out) out->push_back(LabelPath{path});
        } else {
            for (int nbr : adjacency->at(id)) {
                if (found && stop_at_first) break;
                if (std::find(path.begin(), path.end(), nbr) != path.end()) continue;
                if (matches(nbr, word_index + 1)) extend(nbr, word_index + 1);
            }
        }
        path.pop_back();
    }
};

inline bool run_phrase_search(const LinkageGraph& g, const std::vector<TextLabel>& labels, const Query& q,
                              std::vector<LabelPath>* out, bool stop_at_first) {
    validate_query(q);

    std::vector<std::string> query_forms;
    query_forms.reserve(q.words.size());
    for (const std::string& w : q.words) query_forms.push_back(match_form(w, q.policy));

    std::unordered_map<int, std::string> label_forms;
    label_forms.reserve(labels.size());
    std::vector<int> anchor_ids;
    for (const TextLabel& l : labels) {
        label_forms.emplace(l.id, match_form(l.text, q.policy));
        if (label_forms.at(l.id) == query_forms[0]) anchor_ids.push_back(l.id);
    }
    std::sort(anchor_ids.begin(), anchor_ids.end());

    std::unordered_map<int, std::vector<int>> adjacency = g.adjacency();

    PhraseSearch search;
    search.query_forms = &query_forms;
    search.label_forms = &label_forms;
    search.adjacency = &adjacency;
    search.out = out;
    search.stop_at_first = stop_at_first;
    for (int id : anchor_ids) {
        if (search.found && stop_at_first) break;
        if (adjacency.count(id) == 0) continue;  // label not a vertex of g
        search.extend(id, 0);
    }
    if (out) {
        std::sort(out->begin(), out->end(),
                  [](const LabelPath& x, const LabelPath& y) { return x.label_ids < y.label_ids; });
    }
    return search.found;
}

}  // namespace detail

/// Every path of connected, distinct labels whose i-th text matches the
/// i-th query word: depth-first extension from each first-word match through
/// graph neighbors. Paths come back sorted by their id sequences.
inline std::vector<LabelPath> find_phrase(const LinkageGraph& g, const std::vector<TextLabel>& labels,
                                          const Query& q) {
    std::vector<LabelPath> out;
    detail::run_phrase_search(g, labels, q, &out, false);
    return out;
}

/// True iff the map's linkage graph contains at least one matching path.
inline bool map_contains(const LinkageGraph& g, const std::vector<TextLabel>& labels, const Query& q) {
    return detail::run_phrase_search(g, labels, q, nullptr, true);
}

}  // namespace maplink
