#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "maplink/annotation.hpp"
#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"

namespace maplink {

/// Feature differences of labeled pairs: positives are consecutive inside
/// some annotated phrase, negatives are not adjacent in any phrase.
struct PairDataset {
    std::vector<FeatureVector> positives;
    std::vector<FeatureVector> negatives;
};

/// Positives: every distinct consecutive pair across the phrases. Negatives:
/// each label nominates its negatives_per_label nearest non-adjacent labels
/// by box distance (ties by id); nominations are deduplicated as unordered
/// pairs.
inline PairDataset extract_pairs(const std::vector<TextLabel>& labels,
                                 const std::vector<PhraseAnnotation>& phrases,
                                 int negatives_per_label = 5) {
    if (negatives_per_label < 0) throw InputError("extract_pairs: negatives_per_label must be non-negative");
    validate_annotations(phrases, labels, "extract_pairs");

    PairFeatureContext ctx(labels);
    AdjacentPairSet adjacent = phrase_adjacency(phrases);

    std::unordered_map<int, std::size_t> index_of;
    index_of.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) index_of.emplace(labels[i].id, i);

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return labels[x].id < labels[y].id; });

    PairDataset out;

    AdjacentPairSet seen_pos;
    for (const PhraseAnnotation& ph : phrases) {
        for (std::size_t k = 0; k + 1 < ph.label_ids.size(); ++k) {
            int a = ph.label_ids[k];
            int b = ph.label_ids[k + 1];
            if (seen_pos.contains(a, b)) continue;
            seen_pos.insert(a, b);
            out.positives.push_back(ctx.features(index_of.at(a), index_of.at(b)));
        }
    }

    struct Candidate {
        double dist;
        int id;
        std::size_t idx;
    };
    AdjacentPairSet seen_neg;
    std::vector<Candidate> cands;
    for (std::size_t i : order) {
        cands.clear();
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (j == i || adjacent.contains(labels[i].id, labels[j].id)) continue;
            cands.push_back({ctx.distance(i, j), labels[j].id, j});
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
            return x.dist != y.dist ? x.dist < y.dist : x.id < y.id;
        });
        std::size_t quota = std::min(cands.size(), static_cast<std::size_t>(negatives_per_label));
        for (std::size_t k = 0; k < quota; ++k) {
            const Candidate& c = cands[k];
            if (seen_neg.contains(labels[i].id, c.id)) continue;
            seen_neg.insert(labels[i].id, c.id);
            out.negatives.push_back(ctx.features(i, c.idx));
        }
    }
    return out;
}

namespace detail {

inline MetricMatrix gram(const std::vector<FeatureVector>& vs) {
    MetricMatrix g;
    for (const FeatureVector& f : vs) {
        std::array<double, 4> v = f.as_array();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) g.at(r, c) += v[r] * v[c];
    }
    return g;
}

inline double inner(const MetricMatrix& a, const MetricMatrix& b) {
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += a.m[static_cast<std::size_t>(k)] * b.m[static_cast<std::size_t>(k)];
    return s;
}

inline double frob(const MetricMatrix& m) { return std::sqrt(inner(m, m)); }

}  // namespace detail

/// Nearest positive semi-definite matrix: eigenvalues clipped at zero,
/// eigenvectors kept. Input must already be symmetric.
inline MetricMatrix project_psd(const MetricMatrix& m) {
    if (m.max_asymmetry() > 1e-9) {
        throw InputError("project_psd: matrix is not symmetric (asymmetry " +
                         std::to_string(m.max_asymmetry()) + ")");
    }
    MetricMatrix s;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s.at(r, c) = 0.5 * (m.at(r, c) + m.at(c, r));

    detail::Sym4Eigen e = detail::sym4_eigen(s);
    MetricMatrix out;
    for (int k = 0; k < 4; ++k) {
        double lam = std::max(e.values[static_cast<std::size_t>(k)], 0.0);
        if (lam == 0.0) continue;
        const std::array<double, 4>& u = e.vectors[static_cast<std::size_t>(k)];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) out.at(r, c) += lam * u[static_cast<std::size_t>(r)] * u[static_cast<std::size_t>(c)];
    }
    for (int r = 0; r < 4; ++r)
        for (int c = r + 1; c < 4; ++c) {
            double avg = 0.5 * (out.at(r, c) + out.at(c, r));
            out.at(r, c) = avg;
            out.at(c, r) = avg;
        }
    return out;
}

struct LearnResult {
    MetricMatrix matrix;
    std::vector<double> objective_trace;  // positive-pair cost per accepted iterate, at constraint value 1
    double constraint_value{0.0};         // negative-pair cost of the returned matrix
    int iterations{0};
};

/// Learns M minimizing the summed squared distance over positive pairs while
/// the negative-pair sum stays at 1 and M stays positive semi-definite.
///
/// Both sums are linear in M (sum_p v_p' M v_p = <G_p, M> with Gram matrix
/// G_p), and the feasible optimum equals the minimum of the scale-invariant
/// ratio <G_pos, M> / <G_neg, M> over PSD M. Projected gradient descent on
/// that ratio, with backtracking and the constraint term renormalized to 1
/// after every accepted step.
inline LearnResult learn_metric(const PairDataset& data, int max_iters = 1000, double tol = 1e-6) {
    if (max_iters < 1) throw InputError("learn_metric: max_iters must be positive");
    if (!(tol > 0.0)) throw InputError("learn_metric: tol must be positive");
    if (data.positives.empty()) throw InputError("learn_metric: no positive pairs");
    if (data.negatives.empty()) throw InputError("learn_metric: no negative pairs");

    const MetricMatrix gpos = detail::gram(data.positives);
    const MetricMatrix gneg = detail::gram(data.negatives);
    const double tr_neg = gneg.at(0, 0) + gneg.at(1, 1) + gneg.at(2, 2) + gneg.at(3, 3);
    if (!(tr_neg > 0.0)) {
        throw InfeasibleConstraintError("all negative features are zero: the separation constraint cannot reach 1");
    }

    MetricMatrix m;
    for (int i = 0; i < 4; ++i) m.at(i, i) = 1.0 / tr_neg;  // <G_neg, m> == 1
    double denom = detail::inner(gneg, m);
    double f = detail::inner(gpos, m) / denom;

    LearnResult res;
    res.objective_trace.push_back(f);

    double step = 0.0;
    int accepted_steps = 0;
    for (int it = 0; it < max_iters; ++it) {
        MetricMatrix grad;
        for (int k = 0; k < 16; ++k) {
            std::size_t u = static_cast<std::size_t>(k);
            grad.m[u] = (gpos.m[u] - f * gneg.m[u]) / denom;
        }
        double gnorm = detail::frob(grad);
        if (gnorm <= 1e-15 * std::max(1.0, detail::frob(gpos))) break;
        if (step <= 0.0) step = detail::frob(m) / gnorm;

        bool accepted = false;
        MetricMatrix m_new;
        double f_new = f;
        for (int bt = 0; bt < 60 && !accepted; ++bt) {
            MetricMatrix cand;
            for (int k = 0; k < 16; ++k) {
                std::size_t u = static_cast<std::size_t>(k);
                cand.m[u] = m.m[u] - step * grad.m[u];
            }
            cand = project_psd(cand);
            double dn = detail::inner(gneg, cand);
            if (dn > 0.0) {
                double fc = detail::inner(gpos, cand) / dn;
                if (fc < f) {
                    for (double& x : cand.m) x /= dn;
                    m_new = cand;
                    f_new = fc;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent direction left: stationary

        double rel = std::abs(f - f_new) / std::max(std::abs(f), 1e-12);
        m = m_new;
        denom = detail::inner(gneg, m);
        f = f_new;
        res.objective_trace.push_back(f);
        ++accepted_steps;
        step *= 2.0;
        if (rel < tol) break;
    }
    res.iterations = accepted_steps;

    double dn = detail::inner(gneg, m);
    if (!(dn > 0.0)) throw InfeasibleConstraintError("constraint term vanished during projection");
    for (double& x : m.m) x /= dn;
    res.matrix = m;
    res.constraint_value = detail::inner(gneg, res.matrix);
    return res;
}

/// File format: one '#' header line naming the feature order, then the 16
/// matrix entries row-major.
inline void save_metric(const std::string& path, const MetricMatrix& m) {
    validate_metric(m);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write metric file: " + path);
    out << "# feature order: d h a c\n";
    out << std::setprecision(17);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) out << m.at(r, c) << (c == 3 ? '\n' : ' ');
    }
    if (!out) throw InputError("write failed for metric file: " + path);
}

inline MetricMatrix load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open metric file: " + path);
    std::string header;
    if (!std::getline(in, header) || header.empty() || header[0] != '#') {
        throw InputError("metric file missing '#' header line: " + path);
    }
    MetricMatrix m;
    for (int k = 0; k < 16; ++k) {
        if (!(in >> m.m[static_cast<std::size_t>(k)])) {
            throw InputError("metric file needs 16 numbers after the header, found " + std::to_string(k) + ": " +
                             path);
        }
    }
    std::string extra;
    if (in >> extra) throw InputError("metric file has trailing content: " + path);
    validate_metric(m);
    return m;
}

}  // namespace maplink
