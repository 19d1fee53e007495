#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "maplink/annotation.hpp"
#include "maplink/errors.hpp"
#include "maplink/linkage.hpp"
#include "maplink/map_record.hpp"
#include "maplink/metric_learning.hpp"

namespace maplink {

/// Edge-level and phrase-level tallies for one graph (or micro-summed over
/// several). Ratios are undefined when their denominator is zero.
struct LinkageScore {
    long long correct_edges{0};
    long long total_edges{0};
    long long linked_phrases{0};
    long long total_multiword_phrases{0};

    std::optional<double> precision() const {
        if (total_edges == 0) return std::nullopt;
        return static_cast<double>(correct_edges) / static_cast<double>(total_edges);
    }

    std::optional<double> recall() const {
        if (total_multiword_phrases == 0) return std::nullopt;
        return static_cast<double>(linked_phrases) / static_cast<double>(total_multiword_phrases);
    }
};

/// An edge is correct iff its endpoints are consecutive in some phrase; a
/// multiword phrase is linked iff every consecutive pair is a graph edge.
inline LinkageScore score_map(const LinkageGraph& g, const std::vector<TextLabel>& labels,
                              const std::vector<PhraseAnnotation>& phrases) {
    validate_annotations(phrases, labels, "score_map");
    AdjacentPairSet adjacent = phrase_adjacency(phrases);

    LinkageScore s;
    s.total_edges = static_cast<long long>(g.edges.size());
    for (const GraphEdge& e : g.edges) {
        if (adjacent.contains(e.a, e.b)) ++s.correct_edges;
    }
    for (const PhraseAnnotation& ph : phrases) {
        if (!ph.multiword()) continue;
        ++s.total_multiword_phrases;
        bool linked = true;
        for (std::size_t i = 0; i + 1 < ph.label_ids.size(); ++i) {
            if (!g.has_edge(ph.label_ids[i], ph.label_ids[i + 1])) {
                linked = false;
                break;
            }
        }
        if (linked) ++s.linked_phrases;
    }
    return s;
}

/// Micro-average: counts summed, ratios recomputed from the sums.
inline LinkageScore aggregate_scores(const std::vector<LinkageScore>& scores) {
    if (scores.empty()) throw InputError("aggregate_scores: no scores to aggregate");
    LinkageScore sum;
    for (const LinkageScore& s : scores) {
        sum.correct_edges += s.correct_edges;
        sum.total_edges += s.total_edges;
        sum.linked_phrases += s.linked_phrases;
        sum.total_multiword_phrases += s.total_multiword_phrases;
    }
    return sum;
}

enum class LinkMethod {
    MstPenalized,
    CharThreshold,
    MstMahalanobis,
};

inline constexpr std::array<LinkMethod, 3> kAllMethods{LinkMethod::MstPenalized, LinkMethod::CharThreshold,
                                                       LinkMethod::MstMahalanobis};

inline const char* method_name(LinkMethod m) {
    switch (m) {
        case LinkMethod::MstPenalized: return "mst";
        case LinkMethod::CharThreshold: return "threshold";
        case LinkMethod::MstMahalanobis: return "mahalanobis";
    }
    return "?";
}

struct CvCell {
    LinkMethod method{LinkMethod::MstPenalized};
    int fold{0};
    LinkageScore score;  // micro-averaged over the fold's maps
};

struct CvReport {
    int folds{0};
    std::uint64_t seed{0};
    std::vector<std::vector<std::string>> fold_map_ids;  // test maps per fold
    std::vector<CvCell> cells;                           // method-major, fold ascending

    const LinkageScore& cell(LinkMethod m, int fold) const {
        for (const CvCell& c : cells) {
            if (c.method == m && c.fold == fold) return c.score;
        }
        throw InputError("cross-validation report has no cell for fold " + std::to_string(fold));
    }

    // Mean over folds where the ratio is defined; undefined when no fold defines it.
    std::optional<double> mean_precision(LinkMethod m) const { return mean_ratio(m, /*recall=*/false); }
    std::optional<double> mean_recall(LinkMethod m) const { return mean_ratio(m, /*recall=*/true); }

  private:
    std::optional<double> mean_ratio(LinkMethod m, bool recall) const {
        double sum = 0.0;
        int defined = 0;
        for (const CvCell& c : cells) {
            if (c.method != m) continue;
            std::optional<double> v = recall ? c.score.recall() : c.score.precision();
            if (v) {
                sum += *v;
                ++defined;
            }
        }
        if (defined == 0) return std::nullopt;
        return sum / defined;
    }
};

namespace detail {

// std::shuffle is not pinned across standard libraries; mt19937_64 output is.
inline void seeded_shuffle(std::vector<std::string>& ids, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = ids.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(ids[i - 1], ids[j]);
    }
}

inline LinkageGraph graph_for(LinkMethod m, const std::vector<TextLabel>& labels, const MetricMatrix& metric) {
    if (labels.empty()) return LinkageGraph{};
    switch (m) {
        case LinkMethod::MstPenalized: return build_mst_penalized(labels);
        case LinkMethod::CharThreshold: return build_char_threshold_graph(labels);
        case LinkMethod::MstMahalanobis: return build_mst_mahalanobis(labels, metric);
    }
    return LinkageGraph{};
}

}  // namespace detail

/// Partitions the corpus into near-equal folds by a seeded shuffle of the
/// sorted map ids, trains the Mahalanobis metric on each fold's complement,
/// and scores all three methods on the held-out maps.
inline CvReport cross_validate(const std::vector<MapRecord>& corpus, int folds = 5, std::uint64_t seed = 0) {
    if (folds < 1) throw InputError("cross_validate: folds must be positive");
    if (corpus.size() < static_cast<std::size_t>(folds)) {
        throw InputError("cross_validate: " + std::to_string(corpus.size()) + " maps cannot fill " +
                         std::to_string(folds) + " folds");
    }

    std::unordered_map<std::string, const MapRecord*> by_id;
    by_id.reserve(corpus.size());
    std::vector<std::string> ids;
    ids.reserve(corpus.size());
    for (const MapRecord& rec : corpus) {
        if (!rec.annotated) throw InputError("cross_validate: map " + rec.map_id + " has no phrase annotations");
        if (!by_id.emplace(rec.map_id, &rec).second) {
            throw InputError("cross_validate: duplicate map_id " + rec.map_id);
        }
        ids.push_back(rec.map_id);
    }
    std::sort(ids.begin(), ids.end());
    detail::seeded_shuffle(ids, seed);

    CvReport rep;
    rep.folds = folds;
    rep.seed = seed;
    rep.fold_map_ids.resize(static_cast<std::size_t>(folds));
    const std::size_t n = ids.size();
    for (int f = 0; f < folds; ++f) {
        std::size_t begin = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(folds);
        std::size_t end = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(folds);
        rep.fold_map_ids[static_cast<std::size_t>(f)].assign(ids.begin() + static_cast<std::ptrdiff_t>(begin),
                                                             ids.begin() + static_cast<std::ptrdiff_t>(end));
    }

    std::vector<MetricMatrix> fold_metric(static_cast<std::size_t>(folds));
    for (int f = 0; f < folds; ++f) {
        PairDataset train;
        for (int other = 0; other < folds; ++other) {
            if (other == f) continue;
            for (const std::string& id : rep.fold_map_ids[static_cast<std::size_t>(other)]) {
                const MapRecord& rec = *by_id.at(id);
                PairDataset part = extract_pairs(rec.labels, rec.phrases);
                train.positives.insert(train.positives.end(), part.positives.begin(), part.positives.end());
                train.negatives.insert(train.negatives.end(), part.negatives.begin(), part.negatives.end());
            }
        }
        fold_metric[static_cast<std::size_t>(f)] = learn_metric(train).matrix;
    }

    for (LinkMethod m : kAllMethods) {
        for (int f = 0; f < folds; ++f) {
            std::vector<LinkageScore> per_map;
            for (const std::string& id : rep.fold_map_ids[static_cast<std::size_t>(f)]) {
                const MapRecord& rec = *by_id.at(id);
                LinkageGraph g = detail::graph_for(m, rec.labels, fold_metric[static_cast<std::size_t>(f)]);
                per_map.push_back(score_map(g, rec.labels, rec.phrases));
            }
            rep.cells.push_back(CvCell{m, f, aggregate_scores(per_map)});
        }
    }
    return rep;
}

namespace detail {

inline std::string ratio_text(std::optional<double> v) {
    if (!v) return "undefined";
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
}

}  // namespace detail

/// One row per method and fold, then a "mean" row per method averaging the
/// defined fold ratios (count columns stay empty there).
inline void write_scores_csv(std::ostream& out, const CvReport& rep) {
    out << "method,fold,precision,recall,correct_edges,total_edges,linked_phrases,total_multiword_phrases\n";
    for (LinkMethod m : kAllMethods) {
        for (const CvCell& c : rep.cells) {
            if (c.method != m) continue;
            out << method_name(m) << ',' << c.fold << ',' << detail::ratio_text(c.score.precision()) << ','
                << detail::ratio_text(c.score.recall()) << ',' << c.score.correct_edges << ',' << c.score.total_edges
                << ',' << c.score.linked_phrases << ',' << c.score.total_multiword_phrases << '\n';
        }
        out << method_name(m) << ",mean," << detail::ratio_text(rep.mean_precision(m)) << ','
            << detail::ratio_text(rep.mean_recall(m)) << ",,,,\n";
    }
}

}  // namespace maplink
