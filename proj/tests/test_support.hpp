#pragma once

// Generators and independent oracles shared by the unit and acceptance
// suites. Oracles avoid the library's internals: rectangle corners come
// from the documented box definition, spanning trees from Prufer sequences,
// eigenvalues from power iteration, paths from unpruned enumeration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "maplink/maplink.hpp"

namespace testutil {

using maplink::Vec2;

// mt19937_64 raw output is pinned by the standard; distributions are not,
// so draws are derived by hand to keep generated cases identical everywhere.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double real(double lo, double hi) {
        double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
        return lo + u * (hi - lo);
    }

    int integer(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (eng() & 1ull) != 0; }
};

inline std::string synth_word(Rng& rng, int min_len = 3, int max_len = 8) {
    int len = rng.integer(min_len, max_len);
    std::string w;
    for (int i = 0; i < len; ++i) w += static_cast<char>('a' + rng.integer(0, 25));
    return w;
}

// Rectangle corners at the given visual angle (degrees, y-up convention in
// y-down pixel coordinates, matching the OrientedBox definition).
inline maplink::Polygon rect_polygon(Vec2 center, double w, double h, double angle_deg = 0.0) {
    double r = maplink::deg_to_rad(angle_deg);
    Vec2 u{std::cos(r), -std::sin(r)};
    Vec2 v{std::sin(r), std::cos(r)};
    Vec2 eu = u * (w * 0.5);
    Vec2 ev = v * (h * 0.5);
    return {center - eu - ev, center + eu - ev, center + eu + ev, center - eu + ev};
}

inline maplink::TextLabel box_label(int id, const std::string& text, Vec2 center, double w, double h,
                                    double angle_deg = 0.0) {
    return maplink::make_label(id, text, rect_polygon(center, w, h, angle_deg));
}

// ---------------------------------------------------------------------------
// Geometry oracles

// Minimum enclosing-rectangle area by brute-force angle sweep. The 0.05 deg
// grid is augmented with every pairwise point direction (folded mod 90), so
// the grid contains an optimal angle (some enclosing side is flush with a
// hull edge) and the sweep minimum equals the true minimum up to rounding.
inline double sweep_min_area(const std::vector<Vec2>& pts, double step_deg = 0.05) {
    std::vector<double> angles;
    for (double deg = 0.0; deg < 90.0; deg += step_deg) angles.push_back(deg);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Vec2 d = pts[j] - pts[i];
            if (d.x == 0.0 && d.y == 0.0) continue;
            double phi = maplink::rad_to_deg(std::atan2(d.y, d.x));
            for (double c : {phi, -phi, phi + 90.0, 90.0 - phi}) {
                double folded = std::fmod(std::fmod(c, 90.0) + 90.0, 90.0);
                angles.push_back(folded);
            }
        }

    double best = std::numeric_limits<double>::infinity();
    for (double deg : angles) {
        double r = maplink::deg_to_rad(deg);
        double c = std::cos(r), s = std::sin(r);
        double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
        bool first = true;
        for (Vec2 p : pts) {
            double x = p.x * c + p.y * s;
            double y = -p.x * s + p.y * c;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
        best = std::min(best, (xmax - xmin) * (ymax - ymin));
    }
    return best;
}

// Corners recomputed from the documented box fields, not from the library.
inline std::array<Vec2, 4> oracle_corners(const maplink::OrientedBox& b) {
    double r = maplink::deg_to_rad(b.angle);
    Vec2 u{std::cos(r), -std::sin(r)};
    Vec2 v{std::sin(r), std::cos(r)};
    Vec2 eu = u * (b.width * 0.5);
    Vec2 ev = v * (b.height * 0.5);
    return {b.center - eu - ev, b.center + eu - ev, b.center + eu + ev, b.center - eu + ev};
}

inline double oracle_point_seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = maplink::dot(ab, ab);
    double t = len2 > 0.0 ? std::clamp(maplink::dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 q = a + ab * t;
    return maplink::norm(p - q);
}

inline bool oracle_point_in_box(const maplink::OrientedBox& b, Vec2 p, double eps = 1e-12) {
    double r = maplink::deg_to_rad(b.angle);
    Vec2 u{std::cos(r), -std::sin(r)};
    Vec2 v{std::sin(r), std::cos(r)};
    Vec2 d = p - b.center;
    return std::abs(maplink::dot(d, u)) <= b.width * 0.5 + eps &&
           std::abs(maplink::dot(d, v)) <= b.height * 0.5 + eps;
}

inline bool oracle_segments_intersect(Vec2 p1, Vec2 p2, Vec2 p3, Vec2 p4) {
    auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
        double x = maplink::cross(b - a, c - a);
        return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0);
    };
    auto on_seg = [](Vec2 a, Vec2 b, Vec2 p) {
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
               p.y <= std::max(a.y, b.y);
    };
    int o1 = orient(p1, p2, p3), o2 = orient(p1, p2, p4), o3 = orient(p3, p4, p1), o4 = orient(p3, p4, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_seg(p1, p2, p3)) return true;
    if (o2 == 0 && on_seg(p1, p2, p4)) return true;
    if (o3 == 0 && on_seg(p3, p4, p1)) return true;
    if (o4 == 0 && on_seg(p3, p4, p2)) return true;
    return false;
}

// Boundary-sampled box distance. Corners are always among the samples, and
// both boundaries are sampled against the other's exact segments; rectangle
// nearest pairs involve a vertex (or a parallel overlap, where any sample
// attains the minimum), so this is exact up to rounding.
inline double sample_box_distance(const maplink::OrientedBox& a, const maplink::OrientedBox& b,
                                  int per_edge = 1250) {
    std::array<Vec2, 4> ca = oracle_corners(a);
    std::array<Vec2, 4> cb = oracle_corners(b);
    for (int i = 0; i < 4; ++i) {
        if (oracle_point_in_box(b, ca[static_cast<std::size_t>(i)])) return 0.0;
        if (oracle_point_in_box(a, cb[static_cast<std::size_t>(i)])) return 0.0;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (oracle_segments_intersect(ca[static_cast<std::size_t>(i)], ca[static_cast<std::size_t>((i + 1) % 4)],
                                          cb[static_cast<std::size_t>(j)], cb[static_cast<std::size_t>((j + 1) % 4)]))
                return 0.0;
        }

    double best = std::numeric_limits<double>::infinity();
    auto scan = [&](const std::array<Vec2, 4>& from, const std::array<Vec2, 4>& to) {
        for (int i = 0; i < 4; ++i) {
            Vec2 s = from[static_cast<std::size_t>(i)];
            Vec2 e = from[static_cast<std::size_t>((i + 1) % 4)];
            for (int k = 0; k <= per_edge; ++k) {
                double t = static_cast<double>(k) / per_edge;
                Vec2 p = s + (e - s) * t;
                for (int j = 0; j < 4; ++j) {
                    best = std::min(best, oracle_point_seg_dist(p, to[static_cast<std::size_t>(j)],
                                                                to[static_cast<std::size_t>((j + 1) % 4)]));
                }
            }
        }
    };
    scan(ca, cb);
    scan(cb, ca);
    return best;
}

// ---------------------------------------------------------------------------
// Spanning-tree oracle (Prufer enumeration, n <= 7)

inline std::vector<std::pair<int, int>> prufer_tree(const std::vector<int>& seq, int n) {
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int s : seq) ++deg[static_cast<std::size_t>(s)];
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    for (int s : seq) {
        int leaf = -1;
        for (int v = 0; v < n; ++v) {
            if (deg[static_cast<std::size_t>(v)] == 1) {
                leaf = v;
                break;
            }
        }
        edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
        --deg[static_cast<std::size_t>(leaf)];
        --deg[static_cast<std::size_t>(s)];
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] == 1) (a < 0 ? a : b) = v;
    }
    edges.emplace_back(std::min(a, b), std::max(a, b));
    return edges;
}

struct BruteTree {
    std::vector<std::pair<int, int>> edges;  // sorted (min,max) pairs
    double total{0.0};
};

// Minimum spanning tree over vertex indices 0..n-1 by trying all n^(n-2)
// labeled trees. Totals are summed in sorted edge order so a unique optimum
// reproduces build_mst's total bit for bit.
template <typename Cost>
BruteTree brute_force_mst(int n, Cost&& cost) {
    BruteTree best;
    auto eval = [&](std::vector<std::pair<int, int>> edges) {
        std::sort(edges.begin(), edges.end());
        double total = 0.0;
        for (auto [a, b] : edges) total += cost(a, b);
        if (best.edges.empty() || total < best.total) best = {std::move(edges), total};
    };
    if (n == 1) return best;
    if (n == 2) {
        eval({{0, 1}});
        return best;
    }
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    while (true) {
        eval(prufer_tree(seq, n));
        int pos = n - 3;
        while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) {
            seq[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++seq[static_cast<std::size_t>(pos)];
    }
    return best;
}

inline std::vector<std::pair<int, int>> edge_pairs(const maplink::LinkageGraph& g) {
    std::vector<std::pair<int, int>> out;
    out.reserve(g.edges.size());
    for (const maplink::GraphEdge& e : g.edges) out.emplace_back(e.a, e.b);
    return out;
}

// ---------------------------------------------------------------------------
// Search oracle: enumerate every simple path of the query's length, then
// filter by the match policy. No first-word anchoring, no pruning.

inline std::vector<std::vector<int>> enumerate_matching_paths(const maplink::LinkageGraph& g,
                                                              const std::vector<maplink::TextLabel>& labels,
                                                              const maplink::Query& q) {
    std::vector<int> verts = g.label_ids;
    std::map<int, std::vector<int>> adj;
    for (int v : verts) adj[v];
    for (const maplink::GraphEdge& e : g.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::map<int, std::string> form;
    for (const maplink::TextLabel& l : labels) form[l.id] = maplink::match_form(l.text, q.policy);
    std::vector<std::string> want;
    for (const std::string& w : q.words) want.push_back(maplink::match_form(w, q.policy));

    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto matches_all = [&] {
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (form.at(path[i]) != want[i]) return false;
        }
        return true;
    };
    std::function<void()> grow = [&] {
        if (path.size() == want.size()) {
            if (matches_all()) out.push_back(path);
            return;
        }
        for (int nb : adj.at(path.back())) {
            if (std::find(path.begin(), path.end(), nb) != path.end()) continue;
            path.push_back(nb);
            grow();
            path.pop_back();
        }
    };
    for (int v : verts) {
        if (adj.find(v) == adj.end()) continue;
        path.assign(1, v);
        grow();
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Eigenvalue oracle: shifted power iteration with deflation.

inline double oracle_min_eigenvalue(const maplink::MetricMatrix& m, int iters = 5000) {
    // Largest eigenvalue of shift*I - S is shift - min_eig(S).
    double shift = 0.0;
    for (int r = 0; r < 4; ++r) {
        double row = 0.0;
        for (int c = 0; c < 4; ++c) row += std::abs(m.at(r, c));
        shift = std::max(shift, row);
    }
    shift += 1.0;

    std::array<std::array<double, 4>, 4> b{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            (r == c ? shift : 0.0) - m.at(r, c);

    double best = 0.0;
    for (int start = 0; start < 4; ++start) {
        std::array<double, 4> v{};
        v[static_cast<std::size_t>(start)] = 1.0;
        for (int it = 0; it < iters; ++it) {
            std::array<double, 4> w{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    w[static_cast<std::size_t>(r)] +=
                        b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(c)];
            double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
            if (n == 0.0) break;
            for (double& x : w) x /= n;
            v = w;
        }
        double lam = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                lam += v[static_cast<std::size_t>(r)] *
                       b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(c)];
        best = std::max(best, lam);
    }
    return shift - best;
}

// ---------------------------------------------------------------------------
// Synthetic maps

struct ChainMapSpec {
    double gap = 3.0;          // horizontal gap between consecutive words
    double row_gap = 60.0;     // vertical spacing between phrase rows
    double height = 10.0;      // box height of every word
    double char_width = 10.0;  // box width per codepoint
    double x0 = 10.0;
    double y0 = 100.0;
};

// One phrase per horizontal row, words left to right as axis-aligned boxes.
// Consecutive words sit exactly `gap` apart; any non-consecutive pair is at
// least min(2*gap + shortest word width, row_gap - height) apart, so with
// uniform heights/angles/caps the chain edges are the unique cheapest ones
// across any cut (every MST keeps them), and a direct edge that skips over a
// word is the strict maximum of its triangle (no MST keeps it).
inline maplink::MapRecord chain_map(const std::string& map_id, std::optional<int> year,
                                    const std::vector<std::vector<std::string>>& phrase_words,
                                    const ChainMapSpec& spec = {}) {
    maplink::MapRecord rec;
    rec.map_id = map_id;
    rec.year = year;
    rec.annotated = true;
    int next_id = 0;
    double y = spec.y0;
    for (const std::vector<std::string>& words : phrase_words) {
        maplink::PhraseAnnotation ph;
        double x = spec.x0;
        for (const std::string& w : words) {
            double width = spec.char_width * static_cast<double>(maplink::text::codepoint_count(w));
            rec.labels.push_back(maplink::make_label(
                next_id, w,
                maplink::Polygon{{x, y}, {x + width, y}, {x + width, y + spec.height}, {x, y + spec.height}}));
            ph.label_ids.push_back(next_id);
            ++next_id;
            x += width + spec.gap;
        }
        rec.phrases.push_back(std::move(ph));
        y += spec.row_gap;
    }
    return rec;
}

inline std::vector<maplink::TextLabel> random_labels(Rng& rng, int n) {
    std::vector<maplink::TextLabel> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec2 center{rng.real(0.0, 1000.0), rng.real(0.0, 1000.0)};
        double w = rng.real(20.0, 100.0);
        double h = rng.real(5.0, 19.0);  // strictly below w so width/height never swap
        double angle = rng.real(0.0, 180.0);
        std::string word = synth_word(rng);
        if (rng.coin()) {
            for (char& ch : word) ch = static_cast<char>(ch - 'a' + 'A');
        }
        out.push_back(box_label(i, word, center, w, h, angle));
    }
    return out;
}

// Generic position: every pairwise product cost separated by a relative
// margin, so MSTs are unique and survive rigid motions.
inline bool costs_distinct(const std::vector<maplink::TextLabel>& labels, double rel = 1e-6) {
    std::vector<double> costs;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            costs.push_back(maplink::edge_cost(labels[i], labels[j]));
    std::sort(costs.begin(), costs.end());
    for (std::size_t k = 1; k < costs.size(); ++k) {
        if (costs[k] - costs[k - 1] <= rel * std::max(1.0, costs[k])) return false;
    }
    return true;
}

inline maplink::Polygon transformed(const maplink::Polygon& poly, double rot_deg, Vec2 shift, double scale = 1.0) {
    double r = maplink::deg_to_rad(rot_deg);
    double c = std::cos(r), s = std::sin(r);
    maplink::Polygon out;
    out.reserve(poly.size());
    for (Vec2 p : poly) {
        out.push_back({scale * (p.x * c - p.y * s) + shift.x, scale * (p.x * s + p.y * c) + shift.y});
    }
    return out;
}

inline std::vector<maplink::TextLabel> transformed_labels(const std::vector<maplink::TextLabel>& labels,
                                                          double rot_deg, Vec2 shift, double scale = 1.0) {
    std::vector<maplink::TextLabel> out;
    out.reserve(labels.size());
    for (const maplink::TextLabel& l : labels) {
        out.push_back(maplink::make_label(l.id, l.text, transformed(l.polygon, rot_deg, shift, scale)));
    }
    return out;
}

}  // namespace testutil
