#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spanner/clique.hpp"
#include "spanner/graph.hpp"
#include "spanner/hitting.hpp"
#include "spanner/nearest.hpp"
#include "spanner/partition.hpp"

namespace spanner {

struct Clustering {
    // center[v] is kNoVertex when v is unclustered.
    std::vector<Vertex> center;
    // Tree parent toward the center; kNoVertex for centers and unclustered vertices.
    std::vector<Vertex> parent;
    std::uint32_t depth_bound = 0;

    explicit Clustering(std::size_t n = 0) : center(n, kNoVertex), parent(n, kNoVertex) {}
    bool clustered(Vertex v) const { return center[v] != kNoVertex; }
    std::vector<Vertex> centers() const;
    std::size_t cluster_count() const { return centers().size(); }
};

struct DenseOptions {
    HitBackend backend = HitBackend::Random;
    BetaProfile profile = BetaProfile::Log;
    std::uint64_t seed = 0;
    double c = 2.0;
    // n for thresholds; 0 means graph.n().
    std::size_t n_ref = 0;
};

struct FirstLevel {
    Clustering c1;
    std::vector<Vertex> z1;
    EdgeSet edges;
    HittingSetInstance instance;
    std::size_t patched = 0;
};

struct SecondLevel {
    Clustering c2;
    std::vector<Vertex> z2;
    EdgeSet edges;
    std::vector<bool> low;
    // Centers of adjacent C_1 clusters per dense vertex.
    std::vector<std::vector<Vertex>> adjacent;
    std::size_t low_edges = 0;
    std::size_t join_edges = 0;
    std::size_t patched = 0;
};

// Delta is the smallest set size.
HittingSetInstance make_hitting_instance(std::vector<std::pair<Vertex, std::vector<Vertex>>> sets,
                                         std::size_t n_ref);

// Throws HittingFailure when a dense vertex stays uncovered.
FirstLevel build_first_clustering(const Graph& g, const Partition& p, unsigned k, const NNResult& nn,
                                  Network& net, const DenseOptions& opt);
SecondLevel build_second_level(const Graph& g, const Partition& p, const Clustering& c1, unsigned k,
                               Network& net, const DenseOptions& opt);
// One min-ID edge per adjacent (C_1, C_2) pair with different centers.
EdgeSet connect_clusters(const Graph& g, const Clustering& c1, const Clustering& c2, Network& net);

struct DenseResult {
    EdgeSet h_dense;
    FirstLevel first;
    SecondLevel second;
    std::size_t pair_edges = 0;
};

DenseResult cons_spanner_dense(const Graph& g, const Partition& p, unsigned k, const NNResult& nn,
                               Network& net, const DenseOptions& opt);

}  // namespace spanner
