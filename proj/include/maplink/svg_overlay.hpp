#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "maplink/annotation.hpp"
#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"
#include "maplink/geometry.hpp"
#include "maplink/linkage.hpp"

namespace maplink {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Debug picture of one map: every label box outlined with its word, every
/// graph edge drawn center to center. With annotations, edges inside a
/// phrase are green and the rest red; without, all edges are blue.
inline void write_overlay_svg(std::ostream& out, const std::vector<TextLabel>& labels, const LinkageGraph& g,
                              const std::vector<PhraseAnnotation>* phrases = nullptr) {
    double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
    bool first = true;
    for (const TextLabel& l : labels) {
        for (const Vec2& c : l.box.corners()) {
            if (first) {
                min_x = max_x = c.x;
                min_y = max_y = c.y;
                first = false;
            } else {
                min_x = std::min(min_x, c.x);
                max_x = std::max(max_x, c.x);
                min_y = std::min(min_y, c.y);
                max_y = std::max(max_y, c.y);
            }
        }
    }
    double margin = 0.05 * std::max(max_x - min_x, max_y - min_y) + 1.0;

    AdjacentPairSet adjacent;
    if (phrases) adjacent = phrase_adjacency(*phrases);

    out << std::setprecision(10);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (min_x - margin) << ' ' << (min_y - margin)
        << ' ' << (max_x - min_x + 2 * margin) << ' ' << (max_y - min_y + 2 * margin) << "\">\n";

    std::vector<Vec2> center_of;
    for (const TextLabel& l : labels) {
        std::array<Vec2, 4> cs = l.box.corners();
        out << "  <polygon points=\"";
        for (int i = 0; i < 4; ++i) out << cs[static_cast<std::size_t>(i)].x << ',' << cs[static_cast<std::size_t>(i)].y << (i == 3 ? "" : " ");
        out << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        double font = std::max(l.box.height * 0.6, 1.0);
        out << "  <text x=\"" << l.box.center.x << "\" y=\"" << l.box.center.y
            << "\" font-size=\"" << font << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#222\">"
            << detail::xml_escape(l.text) << "</text>\n";
    }

    std::unordered_map<int, Vec2> center;
    center.reserve(labels.size());
    for (const TextLabel& l : labels) center[l.id] = l.box.center;
    for (const GraphEdge& e : g.edges) {
        const char* color = "#1f6feb";
        if (phrases) color = adjacent.contains(e.a, e.b) ? "#2da44e" : "#cf222e";
        out << "  <line x1=\"" << center.at(e.a).x << "\" y1=\"" << center.at(e.a).y << "\" x2=\"" << center.at(e.b).x
            << "\" y2=\"" << center.at(e.b).y << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    }
    out << "</svg>\n";
}

inline void write_overlay_svg(const std::string& path, const std::vector<TextLabel>& labels, const LinkageGraph& g,
                              const std::vector<PhraseAnnotation>* phrases = nullptr) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write overlay " + path);
    write_overlay_svg(out, labels, g, phrases);
    if (!out) throw InputError("write failed for overlay " + path);
}

}  // namespace maplink
