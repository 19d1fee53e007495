#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "maplink/annotation.hpp"
#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"
#include "maplink/linkage.hpp"
#include "maplink/map_record.hpp"
#include "maplink/search.hpp"
#include "maplink/text.hpp"

namespace maplink {

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw InputError("malformed JSON in " + path);
    return doc;
}

inline Polygon polygon_from_json(const nlohmann::json& arr, const std::string& context) {
    if (!arr.is_array()) throw InputError(context + ": polygon must be an array of [x, y] points");
    Polygon poly;
    poly.reserve(arr.size());
    for (const nlohmann::json& pt : arr) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
            throw InputError(context + ": polygon points must be [x, y] number pairs");
        }
        poly.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return poly;
}

inline std::optional<int> year_from_json(const nlohmann::json& doc, const std::string& context) {
    if (!doc.contains("year") || doc["year"].is_null()) return std::nullopt;
    if (!doc["year"].is_number_integer()) throw InputError(context + ": year must be an integer");
    int year = doc["year"].get<int>();
    if (year < 1000 || year > 2100) {
        throw InputError(context + ": year " + std::to_string(year) + " outside [1000, 2100]");
    }
    return year;
}

inline MapRecord map_record_from_canonical(const nlohmann::json& doc, const std::string& context) {
    MapRecord rec;
    if (!doc["map_id"].is_string() || doc["map_id"].get<std::string>().empty()) {
        throw InputError(context + ": map_id must be a non-empty string");
    }
    rec.map_id = doc["map_id"].get<std::string>();
    const std::string where = context + " (map " + rec.map_id + ")";
    rec.year = year_from_json(doc, where);

    if (!doc.contains("labels") || !doc["labels"].is_array()) {
        throw InputError(where + ": labels array is required");
    }
    std::unordered_set<int> ids;
    for (const nlohmann::json& lj : doc["labels"]) {
        if (!lj.is_object() || !lj.contains("id") || !lj["id"].is_number_integer() || !lj.contains("text") ||
            !lj["text"].is_string() || !lj.contains("polygon")) {
            throw InputError(where + ": each label needs integer id, string text, and polygon");
        }
        int id = lj["id"].get<int>();
        if (!ids.insert(id).second) throw InputError(where + ": duplicate label id " + std::to_string(id));
        std::string label_ctx = where + " label " + std::to_string(id);
        Polygon poly = polygon_from_json(lj["polygon"], label_ctx);
        try {
            rec.labels.push_back(make_label(id, lj["text"].get<std::string>(), std::move(poly)));
        } catch (const InputError& e) {
            throw InputError(label_ctx + ": " + e.what());
        }
    }

    if (doc.contains("phrases")) {
        if (!doc["phrases"].is_array()) throw InputError(where + ": phrases must be an array of label-id arrays");
        for (const nlohmann::json& pj : doc["phrases"]) {
            if (!pj.is_array()) throw InputError(where + ": phrases must be an array of label-id arrays");
            PhraseAnnotation ph;
            for (const nlohmann::json& idj : pj) {
                if (!idj.is_number_integer()) throw InputError(where + ": phrase entries must be label ids");
                ph.label_ids.push_back(idj.get<int>());
            }
            rec.phrases.push_back(std::move(ph));
        }
        rec.annotated = true;
        validate_annotations(rec.phrases, rec.labels, where);
    }
    return rec;
}

// Competition tiles: {"image": ..., "groups": [[word, word, ...], ...]} with
// words carrying "vertices" and "text". Unreadable words (empty text or
// "###") are dropped and split their group's phrase at that point.
inline MapRecord map_record_from_icdar(const nlohmann::json& doc, const std::string& context) {
    MapRecord rec;
    if (!doc["image"].is_string() || doc["image"].get<std::string>().empty()) {
        throw InputError(context + ": image must be a non-empty string");
    }
    rec.map_id = doc["image"].get<std::string>();
    const std::string where = context + " (tile " + rec.map_id + ")";
    if (!doc["groups"].is_array()) throw InputError(where + ": groups must be an array");

    rec.annotated = true;
    int next_id = 0;
    std::size_t gi = 0;
    for (const nlohmann::json& group : doc["groups"]) {
        if (!group.is_array()) throw InputError(where + ": each group must be an array of words");
        PhraseAnnotation segment;
        auto close_segment = [&] {
            if (!segment.label_ids.empty()) rec.phrases.push_back(std::exchange(segment, {}));
        };
        std::size_t wi = 0;
        for (const nlohmann::json& word : group) {
            std::string word_ctx =
                where + " group " + std::to_string(gi) + " word " + std::to_string(wi);
            ++wi;
            if (!word.is_object() || !word.contains("vertices")) {
                throw InputError(word_ctx + ": each word needs vertices and text");
            }
            std::string txt = word.contains("text") && word["text"].is_string() ? word["text"].get<std::string>() : "";
            if (text::trim(txt).empty() || txt == "###") {
                close_segment();
                continue;
            }
            Polygon poly = polygon_from_json(word["vertices"], word_ctx);
            try {
                rec.labels.push_back(make_label(next_id, std::move(txt), std::move(poly)));
            } catch (const InputError& e) {
                throw InputError(word_ctx + ": " + e.what());
            }
            segment.label_ids.push_back(next_id);
            ++next_id;
        }
        close_segment();
        ++gi;
    }
    return rec;
}

inline MapRecord map_record_from_json(const nlohmann::json& doc, const std::string& context) {
    if (doc.is_object() && doc.contains("map_id")) return map_record_from_canonical(doc, context);
    if (doc.is_object() && doc.contains("image") && doc.contains("groups")) {
        return map_record_from_icdar(doc, context);
    }
    throw InputError(context + ": unrecognized map schema (need map_id, or image plus groups)");
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

// Filesystem-safe stem, made unique by a hash of the full id.
inline std::string map_file_stem(const std::string& map_id) {
    std::string safe;
    for (char ch : map_id) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' ||
                  ch == '_' || ch == '.';
        safe += ok ? ch : '_';
    }
    if (safe.size() > 80) safe.resize(80);
    return safe + "-" + hex16(fnv1a64(map_id));
}

}  // namespace detail

/// One map per file, or several when the file is a JSON array of tiles.
inline MapRecord load_map(const std::string& path) {
    nlohmann::json doc = detail::parse_json_file(path);
    if (doc.is_array()) throw InputError(path + ": holds a tile list; load it as a corpus file");
    return detail::map_record_from_json(doc, path);
}

inline std::vector<MapRecord> load_map_file(const std::string& path) {
    nlohmann::json doc = detail::parse_json_file(path);
    std::vector<MapRecord> out;
    if (doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            out.push_back(detail::map_record_from_json(doc[i], path + "[" + std::to_string(i) + "]"));
        }
    } else {
        out.push_back(detail::map_record_from_json(doc, path));
    }
    return out;
}

/// Loads every .json file under dir (non-recursive, filename order).
inline std::vector<MapRecord> load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw InputError("cannot read corpus directory " + dir + ": " + ec.message());

    std::vector<std::string> files;
    for (const fs::directory_entry& entry : it) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InputError("no .json map files in " + dir);

    std::vector<MapRecord> out;
    std::unordered_set<std::string> seen;
    for (const std::string& f : files) {
        for (MapRecord& rec : load_map_file(f)) {
            if (!seen.insert(rec.map_id).second) {
                throw InputError("duplicate map_id " + rec.map_id + " (second copy in " + f + ")");
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

inline nlohmann::json to_canonical_json(const MapRecord& rec) {
    nlohmann::json j;
    j["map_id"] = rec.map_id;
    if (rec.year) j["year"] = *rec.year;
    nlohmann::json labels = nlohmann::json::array();
    for (const TextLabel& l : rec.labels) {
        nlohmann::json poly = nlohmann::json::array();
        for (const Vec2& p : l.polygon) poly.push_back({p.x, p.y});
        labels.push_back({{"id", l.id}, {"text", l.text}, {"polygon", poly}});
    }
    j["labels"] = std::move(labels);
    if (rec.annotated) {
        nlohmann::json phrases = nlohmann::json::array();
        for (const PhraseAnnotation& ph : rec.phrases) phrases.push_back(ph.label_ids);
        j["phrases"] = std::move(phrases);
    }
    return j;
}

struct Posting {
    std::string map_id;
    int label_id{0};

    bool operator==(const Posting&) const = default;
};

struct IndexedMapInfo {
    std::string map_id;
    std::optional<int> year;
    std::string path;  // relative to base_dir; empty for in-memory indexes
};

struct CorpusIndex {
    std::vector<IndexedMapInfo> maps;                   // sorted by map_id
    std::map<std::string, std::vector<Posting>> words;  // case-folded word -> sorted postings
    std::string base_dir;                               // set when loaded from disk
};

inline CorpusIndex build_index(const std::vector<MapRecord>& maps) {
    CorpusIndex idx;
    std::unordered_set<std::string> seen;
    for (const MapRecord& rec : maps) {
        if (!seen.insert(rec.map_id).second) throw InputError("build_index: duplicate map_id " + rec.map_id);
        idx.maps.push_back({rec.map_id, rec.year, ""});
        for (const TextLabel& l : rec.labels) idx.words[text::fold(l.text)].push_back({rec.map_id, l.id});
    }
    std::sort(idx.maps.begin(), idx.maps.end(),
              [](const IndexedMapInfo& a, const IndexedMapInfo& b) { return a.map_id < b.map_id; });
    for (auto& [word, postings] : idx.words) {
        std::sort(postings.begin(), postings.end(), [](const Posting& a, const Posting& b) {
            return a.map_id != b.map_id ? a.map_id < b.map_id : a.label_id < b.label_id;
        });
    }
    return idx;
}

/// Writes a self-contained index directory: maps/<stem>.json per map plus
/// index.json with the posting lists and per-map paths.
inline void save_corpus_index(const std::string& dir, const std::vector<MapRecord>& maps) {
    namespace fs = std::filesystem;
    CorpusIndex idx = build_index(maps);

    std::error_code ec;
    fs::create_directories(fs::path(dir) / "maps", ec);
    if (ec) throw InputError("cannot create index directory " + dir + ": " + ec.message());

    std::unordered_map<std::string, std::string> rel_path;
    rel_path.reserve(maps.size());
    for (const MapRecord& rec : maps) {
        std::string rel = "maps/" + detail::map_file_stem(rec.map_id) + ".json";
        std::string full = (fs::path(dir) / rel).string();
        std::ofstream out(full);
        if (!out) throw InputError("cannot write " + full);
        out << to_canonical_json(rec).dump(1) << '\n';
        if (!out) throw InputError("write failed for " + full);
        rel_path.emplace(rec.map_id, std::move(rel));
    }
    for (IndexedMapInfo& info : idx.maps) info.path = rel_path.at(info.map_id);

    nlohmann::json doc;
    nlohmann::json maps_json = nlohmann::json::array();
    for (const IndexedMapInfo& info : idx.maps) {
        nlohmann::json m{{"map_id", info.map_id}, {"path", info.path}};
        if (info.year) m["year"] = *info.year;
        maps_json.push_back(std::move(m));
    }
    doc["maps"] = std::move(maps_json);
    nlohmann::json words_json = nlohmann::json::object();
    for (const auto& [word, postings] : idx.words) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Posting& p : postings) arr.push_back({p.map_id, p.label_id});
        words_json[word] = std::move(arr);
    }
    doc["words"] = std::move(words_json);

    std::string index_path = (fs::path(dir) / "index.json").string();
    std::ofstream out(index_path);
    if (!out) throw InputError("cannot write " + index_path);
    out << doc.dump(1) << '\n';
    if (!out) throw InputError("write failed for " + index_path);
}

inline CorpusIndex load_index(const std::string& dir) {
    namespace fs = std::filesystem;
    std::string path = (fs::path(dir) / "index.json").string();
    nlohmann::json doc = detail::parse_json_file(path);
    if (!doc.is_object() || !doc.contains("maps") || !doc["maps"].is_array() || !doc.contains("words") ||
        !doc["words"].is_object()) {
        throw InputError(path + ": expected an object with maps and words");
    }

    CorpusIndex idx;
    idx.base_dir = dir;
    std::unordered_set<std::string> seen;
    for (const nlohmann::json& m : doc["maps"]) {
        if (!m.is_object() || !m.contains("map_id") || !m["map_id"].is_string() || !m.contains("path") ||
            !m["path"].is_string()) {
            throw InputError(path + ": each map entry needs map_id and path strings");
        }
        IndexedMapInfo info;
        info.map_id = m["map_id"].get<std::string>();
        info.path = m["path"].get<std::string>();
        info.year = detail::year_from_json(m, path + " map " + info.map_id);
        if (!seen.insert(info.map_id).second) throw InputError(path + ": duplicate map_id " + info.map_id);
        idx.maps.push_back(std::move(info));
    }
    std::sort(idx.maps.begin(), idx.maps.end(),
              [](const IndexedMapInfo& a, const IndexedMapInfo& b) { return a.map_id < b.map_id; });

    for (const auto& [word, arr] : doc["words"].items()) {
        if (!arr.is_array()) throw InputError(path + ": posting list for \"" + word + "\" must be an array");
        std::vector<Posting>& postings = idx.words[word];
        for (const nlohmann::json& p : arr) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_number_integer()) {
                throw InputError(path + ": postings must be [map_id, label_id] pairs");
            }
            Posting post{p[0].get<std::string>(), p[1].get<int>()};
            if (seen.count(post.map_id) == 0) {
                throw InputError(path + ": posting references unknown map " + post.map_id);
            }
            postings.push_back(std::move(post));
        }
        std::sort(postings.begin(), postings.end(), [](const Posting& a, const Posting& b) {
            return a.map_id != b.map_id ? a.map_id < b.map_id : a.label_id < b.label_id;
        });
    }
    return idx;
}

inline MapRecord load_indexed_map(const CorpusIndex& idx, const std::string& map_id) {
    namespace fs = std::filesystem;
    for (const IndexedMapInfo& info : idx.maps) {
        if (info.map_id != map_id) continue;
        if (info.path.empty()) throw InputError("index has no file path for map " + map_id);
        fs::path p = idx.base_dir.empty() ? fs::path(info.path) : fs::path(idx.base_dir) / info.path;
        return load_map(p.string());
    }
    throw InputError("index has no map " + map_id);
}

struct GazetteerEntry {
    std::string canonical;
    std::vector<std::string> aliases;  // includes the canonical name
};

struct Gazetteer {
    std::vector<GazetteerEntry> entries;  // sorted by canonical

    const GazetteerEntry* find(std::string_view name) const {
        std::string needle = text::fold(text::trim(name));
        for (const GazetteerEntry& e : entries) {
            if (text::fold(e.canonical) == needle) return &e;
            for (const std::string& a : e.aliases) {
                if (text::fold(a) == needle) return &e;
            }
        }
        return nullptr;
    }
};

/// Gazetteer file: JSON object mapping canonical name -> alias array. The
/// canonical name joins its own alias list when the file omits it.
inline Gazetteer load_gazetteer(const std::string& path) {
    nlohmann::json doc = detail::parse_json_file(path);
    if (!doc.is_object()) throw InputError(path + ": gazetteer must map canonical names to alias arrays");
    Gazetteer g;
    for (const auto& [canonical, arr] : doc.items()) {
        if (canonical.empty()) throw InputError(path + ": empty canonical name");
        if (!arr.is_array()) throw InputError(path + ": aliases of \"" + canonical + "\" must be an array");
        GazetteerEntry e{canonical, {}};
        for (const nlohmann::json& a : arr) {
            if (!a.is_string() || a.get<std::string>().empty()) {
                throw InputError(path + ": aliases of \"" + canonical + "\" must be non-empty strings");
            }
            e.aliases.push_back(a.get<std::string>());
        }
        if (std::find(e.aliases.begin(), e.aliases.end(), canonical) == e.aliases.end()) {
            e.aliases.insert(e.aliases.begin(), canonical);
        }
        g.entries.push_back(std::move(e));
    }
    std::sort(g.entries.begin(), g.entries.end(),
              [](const GazetteerEntry& a, const GazetteerEntry& b) { return a.canonical < b.canonical; });
    return g;
}

/// Per-map linkage graphs keyed by map id and method, stored as JSON files
/// named by a hash of the key. Stale or unreadable entries read as misses.
class MstCache {
  public:
    explicit MstCache(std::string dir) : dir_(std::move(dir)) {}

    static std::string key_for(const std::string& map_id, const std::string& method) {
        return method + "\n" + map_id;
    }

    std::optional<LinkageGraph> load(const std::string& key, const std::vector<int>& expect_sorted_ids) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("label_ids") || !doc["label_ids"].is_array() ||
            !doc.contains("edges") || !doc["edges"].is_array()) {
            return std::nullopt;
        }
        LinkageGraph g;
        for (const nlohmann::json& idj : doc["label_ids"]) {
            if (!idj.is_number_integer()) return std::nullopt;
            g.label_ids.push_back(idj.get<int>());
        }
        if (g.label_ids != expect_sorted_ids) return std::nullopt;  // stale entry
        for (const nlohmann::json& ej : doc["edges"]) {
            if (!ej.is_array() || ej.size() != 3 || !ej[0].is_number_integer() || !ej[1].is_number_integer() ||
                !ej[2].is_number()) {
                return std::nullopt;
            }
            g.edges.push_back({ej[0].get<int>(), ej[1].get<int>(), ej[2].get<double>()});
        }
        return g;
    }

    // Best effort: a cache write that fails only costs a rebuild later.
    void store(const std::string& key, const LinkageGraph& g) const {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) return;
        nlohmann::json doc;
        doc["label_ids"] = g.label_ids;
        nlohmann::json edges = nlohmann::json::array();
        for (const GraphEdge& e : g.edges) edges.push_back({e.a, e.b, e.cost});
        doc["edges"] = std::move(edges);

        std::string final_path = path_for(key);
        std::string tmp_path = final_path + ".tmp";
        {
            std::ofstream out(tmp_path);
            if (!out) return;
            out << doc.dump();
            if (!out) return;
        }
        fs::rename(tmp_path, final_path, ec);
    }

  private:
    std::string path_for(const std::string& key) const {
        return (std::filesystem::path(dir_) / (detail::hex16(detail::fnv1a64(key)) + ".json")).string();
    }

    std::string dir_;
};

struct PlaceMatch {
    std::string map_id;
    std::optional<int> year;
    std::string variant;  // the name variant that confirmed on this map
    std::vector<LabelPath> paths;
};

struct QueryReport {
    std::string place;  // canonical name when a gazetteer resolved the query
    std::vector<PlaceMatch> matches;  // sorted by map_id
    std::size_t map_count{0};
    std::optional<int> year_span;  // max - min year over dated matches
};

/// Two stages: the inverted index prefilters to maps containing every word
/// of some name variant, then the map's linkage MST (built or pulled from
/// the cache) must contain a matching path. Variants are tried in gazetteer
/// order; the first confirming one is reported.
template <typename MapProvider>
QueryReport query_place_with(const CorpusIndex& index, MapProvider&& map_for, const std::string& name,
                             const Gazetteer* gazetteer = nullptr, const MstCache* cache = nullptr) {
    std::string trimmed = text::trim(name);
    if (trimmed.empty()) throw InputError("query_place: empty name");

    std::string place = trimmed;
    std::vector<std::string> variants{trimmed};
    if (gazetteer) {
        const GazetteerEntry* entry = gazetteer->find(trimmed);
        if (!entry) {
            std::string known;
            for (const GazetteerEntry& e : gazetteer->entries) {
                if (!known.empty()) known += ", ";
                known += e.canonical;
            }
            throw InputError("unknown gazetteer name \"" + trimmed + "\"; known entries: " + known);
        }
        place = entry->canonical;
        variants = entry->aliases;
    }

    struct VariantWords {
        std::string variant;
        std::vector<std::string> words;
    };
    std::vector<VariantWords> usable;
    std::map<std::string, std::vector<std::size_t>> candidates;  // map_id -> variant indexes, both ordered
    for (const std::string& v : variants) {
        std::vector<std::string> words = text::split_words(v);
        if (words.empty()) continue;
        std::size_t vi = usable.size();
        usable.push_back({v, words});

        std::unordered_set<std::string> with_all;
        bool first_word = true;
        bool missing = false;
        for (const std::string& w : words) {
            auto it = index.words.find(text::fold(w));
            if (it == index.words.end()) {
                missing = true;
                break;
            }
            std::unordered_set<std::string> ids;
            ids.reserve(it->second.size());
            for (const Posting& p : it->second) ids.insert(p.map_id);
            if (first_word) {
                with_all = std::move(ids);
                first_word = false;
            } else {
                std::unordered_set<std::string> kept;
                for (const std::string& id : with_all) {
                    if (ids.count(id)) kept.insert(id);
                }
                with_all = std::move(kept);
            }
            if (with_all.empty()) break;
        }
        if (missing) continue;
        for (const std::string& id : with_all) candidates[id].push_back(vi);
    }
    if (usable.empty()) throw InputError("query_place: name has no words");

    QueryReport rep;
    rep.place = place;
    for (const auto& [map_id, variant_ids] : candidates) {
        const MapRecord& rec = map_for(map_id);
        if (rec.labels.empty()) continue;

        std::vector<int> sorted_ids;
        sorted_ids.reserve(rec.labels.size());
        for (const TextLabel& l : rec.labels) sorted_ids.push_back(l.id);
        std::sort(sorted_ids.begin(), sorted_ids.end());

        std::string key = MstCache::key_for(map_id, "mst");
        LinkageGraph g;
        std::optional<LinkageGraph> hit = cache ? cache->load(key, sorted_ids) : std::nullopt;
        if (hit) {
            g = std::move(*hit);
        } else {
            g = build_mst_penalized(rec.labels);
            if (cache) cache->store(key, g);
        }

        for (std::size_t vi : variant_ids) {
            Query q{usable[vi].words, MatchPolicy::CaseInsensitive};
            std::vector<LabelPath> paths = find_phrase(g, rec.labels, q);
            if (!paths.empty()) {
                rep.matches.push_back({map_id, rec.year, usable[vi].variant, std::move(paths)});
                break;
            }
        }
    }
    rep.map_count = rep.matches.size();

    std::optional<int> lo, hi;
    for (const PlaceMatch& m : rep.matches) {
        if (!m.year) continue;
        lo = lo ? std::min(*lo, *m.year) : *m.year;
        hi = hi ? std::max(*hi, *m.year) : *m.year;
    }
    if (lo) rep.year_span = *hi - *lo;
    return rep;
}

inline QueryReport query_place(const CorpusIndex& index, const std::vector<MapRecord>& maps, const std::string& name,
                               const Gazetteer* gazetteer = nullptr, const MstCache* cache = nullptr) {
    std::unordered_map<std::string, const MapRecord*> by_id;
    by_id.reserve(maps.size());
    for (const MapRecord& rec : maps) by_id.emplace(rec.map_id, &rec);
    return query_place_with(
        index,
        [&](const std::string& id) -> const MapRecord& {
            auto it = by_id.find(id);
            if (it == by_id.end()) throw InputError("query_place: index references unknown map " + id);
            return *it->second;
        },
        name, gazetteer, cache);
}

inline nlohmann::json report_to_json(const QueryReport& rep) {
    nlohmann::json j;
    j["place"] = rep.place;
    j["map_count"] = rep.map_count;
    if (rep.year_span) j["year_span"] = *rep.year_span;
    nlohmann::json matches = nlohmann::json::array();
    for (const PlaceMatch& m : rep.matches) {
        nlohmann::json mj{{"map_id", m.map_id}, {"variant", m.variant}};
        if (m.year) mj["year"] = *m.year;
        nlohmann::json paths = nlohmann::json::array();
        for (const LabelPath& p : m.paths) paths.push_back(p.label_ids);
        mj["paths"] = std::move(paths);
        matches.push_back(std::move(mj));
    }
    j["matches"] = std::move(matches);
    return j;
}

struct CorpusStats {
    double mean_map_count{0.0};
    std::optional<double> mean_year_span;  // over reports with a defined span
};

inline CorpusStats corpus_stats(const std::vector<QueryReport>& reports) {
    if (reports.empty()) throw InputError("corpus_stats: no reports");
    double count_sum = 0.0;
    double span_sum = 0.0;
    int span_n = 0;
    for (const QueryReport& r : reports) {
        count_sum += static_cast<double>(r.map_count);
        if (r.year_span) {
            span_sum += static_cast<double>(*r.year_span);
            ++span_n;
        }
    }
    CorpusStats s;
    s.mean_map_count = count_sum / static_cast<double>(reports.size());
    if (span_n > 0) s.mean_year_span = span_sum / span_n;
    return s;
}

}  // namespace maplink
