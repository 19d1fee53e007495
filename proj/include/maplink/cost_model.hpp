#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "maplink/errors.hpp"
#include "maplink/geometry.hpp"
#include "maplink/text.hpp"

namespace maplink {

/// One recognized word on a map: text plus bounding polygon. The oriented
/// box and the all-caps flag are derived once at construction.
struct TextLabel {
    int id{0};
    std::string text;
    Polygon polygon;
    OrientedBox box;
    bool all_caps{false};
};

/// True iff the text has at least one cased character and every cased
/// character is uppercase. Digits and punctuation are ignored, so "Gt." is
/// not all-caps and "1852" (no cased characters) is not either.
inline bool is_all_caps(std::string_view word) {
    bool any_cased = false;
    for (char32_t cp : text::decode_utf8(word)) {
        if (text::is_lower(cp)) return false;
        if (text::is_upper(cp)) any_cased = true;
    }
    return any_cased;
}

inline TextLabel make_label(int id, std::string word, Polygon polygon) {
    if (text::trim(word).empty()) {
        throw InputError("label " + std::to_string(id) + ": text is empty");
    }
    TextLabel l;
    l.id = id;
    l.text = std::move(word);
    l.box = min_area_rect(polygon);
    l.polygon = std::move(polygon);
    l.all_caps = is_all_caps(l.text);
    return l;
}

/// Pairwise visual features: box gap d (pixels), height-ratio excess h,
/// angle sine a in [0,1], capitalization mismatch c in {0,1}.
struct FeatureVector {
    double d{0.0};
    double h{0.0};
    double a{0.0};
    double c{0.0};

    std::array<double, 4> as_array() const { return {d, h, a, c}; }
};

/// Height-ratio guard: a pair where exactly one box has zero height gets a
/// ratio large enough that it never links; two zero heights are treated as
/// equal.
inline constexpr double kLargeHeightRatio = 1e6;

namespace detail {

inline double height_ratio_excess(double hi, double hj) {
    if (hi == 0.0 && hj == 0.0) return 0.0;
    if (hi == 0.0 || hj == 0.0) return kLargeHeightRatio;
    return std::max(hi, hj) / std::min(hi, hj) - 1.0;
}

inline double angle_sine(double angle_i, double angle_j) {
    double raw = std::abs(angle_i - angle_j);
    double diff = std::min(raw, 180.0 - raw);
    return std::sin(deg_to_rad(diff));
}

}  // namespace detail

inline FeatureVector feature_vector(const TextLabel& li, const TextLabel& lj) {
    FeatureVector f;
    f.d = box_min_distance(li.box, lj.box);
    f.h = detail::height_ratio_excess(li.box.height, lj.box.height);
    f.a = detail::angle_sine(li.box.angle, lj.box.angle);
    f.c = li.all_caps != lj.all_caps ? 1.0 : 0.0;
    return f;
}

/// Product edge cost: d * (1+h) * (1+a) * (1+c). Zero exactly when the
/// boxes touch, whatever the other features say.
inline double edge_cost_from_features(const FeatureVector& f) {
    return f.d * (1.0 + f.h) * (1.0 + f.a) * (1.0 + f.c);
}

inline double edge_cost(const TextLabel& li, const TextLabel& lj) {
    return edge_cost_from_features(feature_vector(li, lj));
}

/// Symmetric 4x4 matrix for the Mahalanobis baseline, stored row-major.
struct MetricMatrix {
    std::array<double, 16> m{};

    double& at(int r, int c) { return m[static_cast<std::size_t>(r) * 4 + static_cast<std::size_t>(c)]; }
    double at(int r, int c) const { return m[static_cast<std::size_t>(r) * 4 + static_cast<std::size_t>(c)]; }

    static MetricMatrix identity() {
        MetricMatrix out;
        for (int i = 0; i < 4; ++i) out.at(i, i) = 1.0;
        return out;
    }
    static MetricMatrix diagonal(double a, double b, double c, double d) {
        MetricMatrix out;
        out.at(0, 0) = a;
        out.at(1, 1) = b;
        out.at(2, 2) = c;
        out.at(3, 3) = d;
        return out;
    }

    /// v^T M v
    double quad(const std::array<double, 4>& v) const {
        double q = 0.0;
        for (int r = 0; r < 4; ++r) {
            double row = 0.0;
            for (int c = 0; c < 4; ++c) row += at(r, c) * v[static_cast<std::size_t>(c)];
            q += v[static_cast<std::size_t>(r)] * row;
        }
        return q;
    }

    double max_asymmetry() const {
        double worst = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = r + 1; c < 4; ++c) worst = std::max(worst, std::abs(at(r, c) - at(c, r)));
        return worst;
    }
};

namespace detail {

struct Sym4Eigen {
    std::array<double, 4> values{};                  // unordered
    std::array<std::array<double, 4>, 4> vectors{};  // vectors[k] is the k-th eigenvector
};

/// Cyclic Jacobi eigendecomposition of a symmetric 4x4 matrix.
inline Sym4Eigen sym4_eigen(const MetricMatrix& s) {
    std::array<std::array<double, 4>, 4> a{};
    std::array<std::array<double, 4>, 4> v{};
    for (int r = 0; r < 4; ++r) {
        v[r][r] = 1.0;
        for (int c = 0; c < 4; ++c) a[r][c] = 0.5 * (s.at(r, c) + s.at(c, r));
    }
    double scale = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) scale = std::max(scale, std::abs(a[r][c]));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(a[p][q]) <= 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (int k = 0; k < 4; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - sn * vkq;
                    v[k][q] = sn * vkp + c * vkq;
                }
            }
        }
    }

    Sym4Eigen e;
    for (int k = 0; k < 4; ++k) {
        e.values[static_cast<std::size_t>(k)] = a[k][k];
        for (int r = 0; r < 4; ++r) e.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = v[r][k];
    }
    return e;
}

}  // namespace detail

inline double min_eigenvalue(const MetricMatrix& m) {
    detail::Sym4Eigen e = detail::sym4_eigen(m);
    double lo = e.values[0];
    for (double x : e.values) lo = std::min(lo, x);
    return lo;
}

/// Checks the MetricMatrix invariants: symmetric within 1e-9 and positive
/// semi-definite (smallest eigenvalue >= -1e-9).
inline void validate_metric(const MetricMatrix& m) {
    for (double x : m.m) {
        if (!std::isfinite(x)) throw InputError("metric matrix has non-finite entries");
    }
    if (m.max_asymmetry() > 1e-9) {
        throw InputError("metric matrix is not symmetric (asymmetry " + std::to_string(m.max_asymmetry()) + ")");
    }
    double lo = min_eigenvalue(m);
    if (lo < -1e-9) {
        throw InputError("metric matrix is not positive semi-definite (min eigenvalue " + std::to_string(lo) + ")");
    }
}

/// sqrt(v^T M v) over the pair feature vector. Radicands in [-1e-9, 0) are
/// rounding noise and clamp to 0; anything lower means the metric is broken.
inline double mahalanobis_cost_from_features(const FeatureVector& f, const MetricMatrix& m) {
    double q = m.quad(f.as_array());
    if (q < -1e-9) {
        throw InvalidMetricError("negative Mahalanobis radicand " + std::to_string(q));
    }
    return q > 0.0 ? std::sqrt(q) : 0.0;
}

inline double mahalanobis_cost(const TextLabel& li, const TextLabel& lj, const MetricMatrix& m) {
    return mahalanobis_cost_from_features(feature_vector(li, lj), m);
}

/// Per-label caches for bulk pairwise feature evaluation. MST construction
/// over n labels touches every pair once; recomputing corners or re-decoding
/// UTF-8 per pair would dominate the run.
class PairFeatureContext {
public:
    explicit PairFeatureContext(const std::vector<TextLabel>& labels) {
        geom_.reserve(labels.size());
        height_.reserve(labels.size());
        angle_.reserve(labels.size());
        caps_.reserve(labels.size());
        for (const TextLabel& l : labels) {
            geom_.push_back(make_box_geom(l.box));
            height_.push_back(l.box.height);
            angle_.push_back(l.box.angle);
            caps_.push_back(l.all_caps ? 1 : 0);
        }
    }

    std::size_t size() const { return geom_.size(); }

    FeatureVector features(std::size_t i, std::size_t j) const {
        FeatureVector f;
        f.d = box_min_distance(geom_[i], geom_[j]);
        f.h = detail::height_ratio_excess(height_[i], height_[j]);
        f.a = detail::angle_sine(angle_[i], angle_[j]);
        f.c = caps_[i] != caps_[j] ? 1.0 : 0.0;
        return f;
    }

    double distance(std::size_t i, std::size_t j) const { return box_min_distance(geom_[i], geom_[j]); }

    double penalized_cost(std::size_t i, std::size_t j) const { return edge_cost_from_features(features(i, j)); }

    double mahalanobis(std::size_t i, std::size_t j, const MetricMatrix& m) const {
        return mahalanobis_cost_from_features(features(i, j), m);
    }

private:
    std::vector<BoxGeom> geom_;
    std::vector<double> height_;
    std::vector<double> angle_;
    std::vector<std::uint8_t> caps_;
};

}  // namespace maplink
