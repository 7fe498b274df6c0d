#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avk/catspaces.hpp"
#include "avk/chains.hpp"
#include "avk/cocycle.hpp"

namespace avk {

// Parsed form of the chain document:
//   { "model": "H2" | "H3" | "tree",
//     "points": [[re, im], ...] | [[x, y, z], ...] | [node ids],
//     "pair": {"a": .., "b": ..},            (optional)
//     "tree": {"nodes": [...], "edges": [[u, v, length], ...]} (model "tree") }
// Round-trips preserve full double precision (17 significant digits).
struct ChainDoc {
    std::string model; // "H2", "H3", "tree"
    std::vector<HPoint> h2_points;
    std::vector<H3Point> h3_points;
    std::optional<MetricTree> tree;
    std::vector<int> tree_nodes;
    std::optional<GoodPair> pair;

    MetricChain metric_chain() const;
};

std::string chain_to_json(const ChainDoc& doc);
ChainDoc chain_from_json(const std::string& text);

// Matrix chain document: { "mats": [[a, b, c, d], ...] }.
std::string mat_chain_to_json(const MatChain& mc);
MatChain mat_chain_from_json(const std::string& text);

} // namespace avk
