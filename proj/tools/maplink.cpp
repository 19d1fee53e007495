#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "maplink/maplink.hpp"

namespace {

maplink::MatchPolicy parse_policy(const std::string& s) {
    if (s == "exact") return maplink::MatchPolicy::Exact;
    if (s == "normalized") return maplink::MatchPolicy::Normalized;
    return maplink::MatchPolicy::CaseInsensitive;
}

int run_link(const std::string& map_path, const std::string& method, const std::string& metric_path,
             const std::string& overlay_path) {
    maplink::MapRecord rec = maplink::load_map(map_path);
    if (rec.labels.empty()) throw maplink::InputError(map_path + ": map has no labels");

    maplink::LinkageGraph g;
    if (method == "threshold") {
        g = maplink::build_char_threshold_graph(rec.labels);
    } else if (method == "mahalanobis") {
        if (metric_path.empty()) throw maplink::InputError("--metric is required for --method mahalanobis");
        g = maplink::build_mst_mahalanobis(rec.labels, maplink::load_metric(metric_path));
    } else {
        g = maplink::build_mst_penalized(rec.labels);
    }

    maplink::DegreeStats deg = maplink::graph_degree_stats(g);
    std::cout << "map " << rec.map_id << "\nlabels " << rec.labels.size() << "\nedges " << deg.edge_count
              << "\ndegrees min " << deg.min_degree << " mean " << deg.mean_degree << " max " << deg.max_degree
              << '\n';
    for (const maplink::GraphEdge& e : g.edges) {
        std::cout << "edge " << e.a << ' ' << e.b << ' ' << e.cost << '\n';
    }

    if (!overlay_path.empty()) {
        maplink::write_overlay_svg(overlay_path, rec.labels, g, rec.annotated ? &rec.phrases : nullptr);
        std::cout << "overlay " << overlay_path << '\n';
    }
    return 0;
}

int run_search(const std::string& map_path, const std::string& name, const std::string& policy) {
    maplink::MapRecord rec = maplink::load_map(map_path);
    if (rec.labels.empty()) throw maplink::InputError(map_path + ": map has no labels");
    maplink::LinkageGraph g = maplink::build_mst_penalized(rec.labels);

    maplink::Query q;
    q.words = maplink::text::split_words(name);
    q.policy = parse_policy(policy);
    std::vector<maplink::LabelPath> paths = maplink::find_phrase(g, rec.labels, q);

    std::unordered_map<int, const maplink::TextLabel*> by_id;
    for (const maplink::TextLabel& l : rec.labels) by_id.emplace(l.id, &l);
    for (const maplink::LabelPath& p : paths) {
        std::cout << "match:";
        for (int id : p.label_ids) std::cout << ' ' << id;
        std::cout << " (";
        for (std::size_t i = 0; i < p.label_ids.size(); ++i) {
            std::cout << (i ? " " : "") << by_id.at(p.label_ids[i])->text;
        }
        std::cout << ")\n";
    }
    if (paths.empty()) {
        std::cout << "no match for \"" << name << "\"\n";
        return 1;
    }
    return 0;
}

int run_eval(const std::string& corpus_dir, int folds, std::uint64_t seed, const std::string& out_path) {
    std::vector<maplink::MapRecord> corpus = maplink::load_corpus(corpus_dir);
    maplink::CvReport rep = maplink::cross_validate(corpus, folds, seed);
    if (out_path.empty()) {
        maplink::write_scores_csv(std::cout, rep);
    } else {
        std::ofstream out(out_path);
        if (!out) throw maplink::InputError("cannot write " + out_path);
        maplink::write_scores_csv(out, rep);
        std::cout << "wrote " << out_path << '\n';
    }
    return 0;
}

int run_learn_metric(const std::string& corpus_dir, const std::string& out_path) {
    std::vector<maplink::MapRecord> corpus = maplink::load_corpus(corpus_dir);
    maplink::PairDataset data;
    for (const maplink::MapRecord& rec : corpus) {
        if (!rec.annotated) continue;
        maplink::PairDataset part = maplink::extract_pairs(rec.labels, rec.phrases);
        data.positives.insert(data.positives.end(), part.positives.begin(), part.positives.end());
        data.negatives.insert(data.negatives.end(), part.negatives.begin(), part.negatives.end());
    }
    if (data.positives.empty() && data.negatives.empty()) {
        throw maplink::InputError(corpus_dir + ": no annotated maps to learn from");
    }
    maplink::LearnResult res = maplink::learn_metric(data);
    maplink::save_metric(out_path, res.matrix);
    std::cout << "pairs " << data.positives.size() << " positive, " << data.negatives.size()
              << " negative\niterations " << res.iterations << "\nobjective " << res.objective_trace.back()
              << "\nwrote " << out_path << '\n';
    return 0;
}

int run_index(const std::string& corpus_dir, const std::string& out_dir) {
    std::vector<maplink::MapRecord> corpus = maplink::load_corpus(corpus_dir);
    maplink::save_corpus_index(out_dir, corpus);
    std::cout << "indexed " << corpus.size() << " maps into " << out_dir << '\n';
    return 0;
}

int run_query(const std::string& index_dir, const std::string& name, const std::string& gazetteer_path,
              bool as_json) {
    maplink::CorpusIndex index = maplink::load_index(index_dir);
    maplink::Gazetteer gaz;
    bool have_gaz = !gazetteer_path.empty();
    if (have_gaz) gaz = maplink::load_gazetteer(gazetteer_path);
    maplink::MstCache cache(index_dir + "/cache");

    std::unordered_map<std::string, maplink::MapRecord> loaded;
    auto provider = [&](const std::string& id) -> const maplink::MapRecord& {
        auto it = loaded.find(id);
        if (it != loaded.end()) return it->second;
        return loaded.emplace(id, maplink::load_indexed_map(index, id)).first->second;
    };
    maplink::QueryReport rep =
        maplink::query_place_with(index, provider, name, have_gaz ? &gaz : nullptr, &cache);

    if (as_json) {
        std::cout << maplink::report_to_json(rep).dump(1) << '\n';
    } else {
        std::cout << "place: " << rep.place << "\nmaps: " << rep.map_count << "\nyear-span: ";
        if (rep.year_span) {
            std::cout << *rep.year_span << '\n';
        } else {
            std::cout << "undefined\n";
        }
        for (const maplink::PlaceMatch& m : rep.matches) {
            std::cout << "match " << m.map_id << " year=";
            if (m.year) {
                std::cout << *m.year;
            } else {
                std::cout << '-';
            }
            std::cout << " variant=\"" << m.variant << "\" paths=" << m.paths.size() << '\n';
        }
    }
    return rep.map_count > 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"links single-word map labels into multiword place names"};
    app.require_subcommand(1);

    std::string link_map, link_method = "mst", link_metric, link_overlay;
    CLI::App* link = app.add_subcommand("link", "build a linkage graph for one map");
    link->add_option("map", link_map, "map JSON file")->required();
    link->add_option("--method", link_method, "mst | threshold | mahalanobis")
        ->check(CLI::IsMember({"mst", "threshold", "mahalanobis"}));
    link->add_option("--metric", link_metric, "metric file for mahalanobis");
    link->add_option("--overlay", link_overlay, "write an SVG overlay of boxes and edges");

    std::string search_map, search_name, search_policy = "case-insensitive";
    CLI::App* search = app.add_subcommand("search", "find a multiword name on one map");
    search->add_option("map", search_map, "map JSON file")->required();
    search->add_option("name", search_name, "multiword place name")->required();
    search->add_option("--policy", search_policy, "exact | case-insensitive | normalized")
        ->check(CLI::IsMember({"exact", "case-insensitive", "normalized"}));

    std::string eval_dir, eval_out;
    int eval_folds = 5;
    std::uint64_t eval_seed = 0;
    CLI::App* eval = app.add_subcommand("eval", "cross-validate the linkage methods on an annotated corpus");
    eval->add_option("corpus-dir", eval_dir, "directory of map JSON files")->required();
    eval->add_option("--folds", eval_folds, "number of folds");
    eval->add_option("--seed", eval_seed, "shuffle seed");
    eval->add_option("--out", eval_out, "CSV output path (default stdout)");

    std::string learn_dir, learn_out;
    CLI::App* learn = app.add_subcommand("learn-metric", "fit a Mahalanobis metric to an annotated corpus");
    learn->add_option("corpus-dir", learn_dir, "directory of map JSON files")->required();
    learn->add_option("--out", learn_out, "metric file to write")->required();

    std::string index_dir_in, index_out;
    CLI::App* index = app.add_subcommand("index", "build a queryable index directory from a corpus");
    index->add_option("corpus-dir", index_dir_in, "directory of map JSON files")->required();
    index->add_option("--out", index_out, "index directory to create")->required();

    std::string query_dir, query_name, query_gazetteer;
    bool query_json = false;
    CLI::App* query = app.add_subcommand("query", "search an indexed corpus for a place name");
    query->add_option("index-dir", query_dir, "directory written by the index subcommand")->required();
    query->add_option("name", query_name, "place name (or gazetteer entry)")->required();
    query->add_option("--gazetteer", query_gazetteer, "gazetteer JSON file of name variants");
    query->add_flag("--json", query_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (link->parsed()) return run_link(link_map, link_method, link_metric, link_overlay);
        if (search->parsed()) return run_search(search_map, search_name, search_policy);
        if (eval->parsed()) return run_eval(eval_dir, eval_folds, eval_seed, eval_out);
        if (learn->parsed()) return run_learn_metric(learn_dir, learn_out);
        if (index->parsed()) return run_index(index_dir_in, index_out);
        if (query->parsed()) return run_query(query_dir, query_name, query_gazetteer, query_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
