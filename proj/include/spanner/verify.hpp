#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spanner/dense.hpp"
#include "spanner/graph.hpp"

namespace spanner {

struct StretchAudit {
    // Same order as graph.edges(); kInf when the endpoints are disconnected in H.
    std::vector<std::uint32_t> stretch;
    std::uint32_t max = 0;
    Edge argmax;
    std::map<std::uint32_t, std::size_t> histogram;
    double bound = 0;
    bool pass = false;
};

// Throws InputError if H is not a subgraph of G.
StretchAudit audit_stretch(const Graph& g, const EdgeSet& h, double bound);

struct ClusterAudit {
    bool pass = true;
    std::string message;
    std::uint32_t max_depth = 0;
};

ClusterAudit audit_clustering(const Graph& g, const Clustering& c, const EdgeSet& h, std::uint32_t expected_depth);

// Depth of the BFS tree from root inside H restricted to members; kInf if some
// member is unreachable.
std::uint32_t cluster_depth_in(const Graph& h, const std::vector<Vertex>& members, Vertex root);

}  // namespace spanner
