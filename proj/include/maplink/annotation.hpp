#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"

namespace maplink {

/// Ground truth: the ordered label ids that make up one phrase. A phrase of
/// one label is a single-word name; only phrases of two or more labels count
/// as multiword.
struct PhraseAnnotation {
    std::vector<int> label_ids;

    bool multiword() const { return label_ids.size() >= 2; }
};

inline void validate_annotations(const std::vector<PhraseAnnotation>& phrases,
                                 const std::vector<TextLabel>& labels,
                                 const std::string& context = {}) {
    std::unordered_set<int> known;
    known.reserve(labels.size());
    for (const TextLabel& l : labels) known.insert(l.id);
    std::string where = context.empty() ? std::string{} : " in " + context;
    for (std::size_t p = 0; p < phrases.size(); ++p) {
        if (phrases[p].label_ids.empty()) {
            throw InputError("phrase " + std::to_string(p) + where + " is empty");
        }
        std::unordered_set<int> seen;
        for (int id : phrases[p].label_ids) {
            if (!known.count(id)) {
                throw InputError("phrase " + std::to_string(p) + where + " references unknown label id " +
                                 std::to_string(id));
            }
            if (!seen.insert(id).second) {
                throw InputError("phrase " + std::to_string(p) + where + " repeats label id " + std::to_string(id));
            }
        }
    }
}

/// Unordered pairs of label ids that are consecutive in some phrase. This is
/// what "correct edge" means for both scoring and pair extraction.
struct AdjacentPairSet {
    std::unordered_set<long long> pairs;

    static long long key(int a, int b) {
        int lo = a < b ? a : b;
        int hi = a < b ? b : a;
        return (static_cast<long long>(lo) << 32) ^ static_cast<unsigned int>(hi);
    }

    void insert(int a, int b) { pairs.insert(key(a, b)); }
    bool contains(int a, int b) const { return pairs.count(key(a, b)) > 0; }
};

inline AdjacentPairSet phrase_adjacency(const std::vector<PhraseAnnotation>& phrases) {
    AdjacentPairSet set;
    for (const PhraseAnnotation& ph : phrases) {
        for (std::size_t i = 0; i + 1 < ph.label_ids.size(); ++i) {
            set.insert(ph.label_ids[i], ph.label_ids[i + 1]);
        }
    }
    return set;
}

}  // namespace maplink
