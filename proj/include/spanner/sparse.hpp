#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spanner/clique.hpp"
#include "spanner/graph.hpp"
#include "spanner/nearest.hpp"
#include "spanner/partition.hpp"

namespace spanner {

struct SpannerDecision {
    Vertex by = 0;
    Vertex to = 0;
    std::uint32_t round = 0;
};

struct LocalSpannerRun {
    EdgeSet edges;
    std::vector<SpannerDecision> added;
    // Round at whose end the vertex became inactive; 0 if still active.
    std::vector<std::uint32_t> inactive_after;
};

// Synchronous LOCAL-model spanner for `rounds` rounds with the given sigma.
// Neighbors are scanned in ascending ID.
LocalSpannerRun local_spanner_run(const Graph& g, std::uint32_t rounds, std::size_t sigma);

// Reference run over the whole graph: k rounds, sigma = ceil(n^(1/k)).
EdgeSet local_spanner_global(const Graph& g, unsigned k);

struct LocalView {
    Vertex owner = kNoVertex;
    // Sorted global IDs; local ID i stands for vertices[i].
    std::vector<Vertex> vertices;
    Graph subgraph;
    std::vector<std::uint32_t> dist;
    std::vector<bool> sparse;

    bool empty() const { return owner == kNoVertex; }
    Vertex local(Vertex global) const;
};

// G_sparse as a graph on all n vertices.
Graph sparse_graph(const Graph& g, const Partition& p);

// Every sparse vertex collects the r-ball of G_sparse around it. Indexed by
// vertex; dense entries stay empty.
std::vector<LocalView> build_local_views(const Graph& g, const Partition& p, const NNResult& nn,
                                         Network& net);

struct SparseResult {
    EdgeSet h_sparse;
    // H_sparse(u) per sparse u.
    std::vector<std::vector<Edge>> local_edges;
    std::uint32_t max_inactive_round = 0;
};

// n_ref is the n used for sigma.
SparseResult cons_spanner_sparse(const Graph& g, const Partition& p, unsigned k,
                                 const std::vector<LocalView>& views, Network& net, std::size_t n_ref = 0);

}  // namespace spanner
