#include "avk/json_io.hpp"

#include <json.hpp>

namespace avk {

using nlohmann::json;

namespace {

json pair_to_json(const GoodPair& gp) { return json{{"a", gp.a}, {"b", gp.b}}; }

json tree_to_json(const MetricTree& t) {
    json nodes = json::array();
    for (int i = 0; i < t.node_count(); ++i)
        nodes.push_back(i);
    json edges = json::array();
    for (const auto& [u, v, len] : t.edges())
        edges.push_back(json::array({u, v, len}));
    return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

MetricTree tree_from_json(const json& j) {
    if (!j.contains("nodes") || !j.contains("edges"))
        throw ConfigError("tree JSON needs \"nodes\" and \"edges\"");
    const int node_count = static_cast<int>(j.at("nodes").size());
    std::vector<std::tuple<int, int, double>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>());
    return MetricTree(node_count, std::move(edges));
}

} // namespace

MetricChain ChainDoc::metric_chain() const {
    if (model == "H2")
        return MetricChain::from_h2(Chain(h2_points));
    if (model == "H3")
        return MetricChain::from_h3(h3_points);
    if (model == "tree") {
        if (!tree)
            throw ConfigError("chain document with model \"tree\" carries no tree");
        return MetricChain::from_tree(*tree, tree_nodes);
    }
    throw ConfigError("unknown chain model \"" + model + "\"");
}

std::string chain_to_json(const ChainDoc& doc) {
    json j;
    j["model"] = doc.model;
    json points = json::array();
    if (doc.model == "H2") {
        for (const auto& p : doc.h2_points)
            points.push_back(json::array({p.re, p.im}));
    } else if (doc.model == "H3") {
        for (const auto& p : doc.h3_points)
            points.push_back(json::array({p.x, p.y, p.z}));
    } else if (doc.model == "tree") {
        for (int id : doc.tree_nodes)
            points.push_back(id);
        if (!doc.tree)
            throw ConfigError("chain document with model \"tree\" carries no tree");
        j["tree"] = tree_to_json(*doc.tree);
    } else {
        throw ConfigError("unknown chain model \"" + doc.model + "\"");
    }
    j["points"] = std::move(points);
    if (doc.pair)
        j["pair"] = pair_to_json(*doc.pair);
    return j.dump();
}

ChainDoc chain_from_json(const std::string& text) {
    const json j = json::parse(text);
    ChainDoc doc;
    doc.model = j.at("model").get<std::string>();
    const json& points = j.at("points");
    if (doc.model == "H2") {
        for (const auto& p : points)
            doc.h2_points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    } else if (doc.model == "H3") {
        for (const auto& p : points)
            doc.h3_points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                                       p.at(2).get<double>());
    } else if (doc.model == "tree") {
        for (const auto& p : points)
            doc.tree_nodes.push_back(p.get<int>());
        doc.tree = tree_from_json(j.at("tree"));
    } else {
        throw ConfigError("unknown chain model \"" + doc.model + "\"");
    }
    if (j.contains("pair"))
        doc.pair = good_pair(j.at("pair").at("a").get<double>(), j.at("pair").at("b").get<double>());
    return doc;
}

std::string mat_chain_to_json(const MatChain& mc) {
    json mats = json::array();
    for (const auto& m : mc.mats())
        mats.push_back(json::array({m.a, m.b, m.c, m.d}));
    return json{{"mats", std::move(mats)}}.dump();
}

MatChain mat_chain_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<Mat2> mats;
    for (const auto& m : j.at("mats"))
        mats.emplace_back(m.at(0).get<double>(), m.at(1).get<double>(), m.at(2).get<double>(),
                          m.at(3).get<double>());
    return MatChain(std::move(mats));
}

} // namespace avk
