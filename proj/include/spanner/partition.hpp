#pragma once

#include <vector>

#include "spanner/graph.hpp"
#include "spanner/nearest.hpp"

namespace spanner {

struct Partition {
    std::vector<bool> heavy;
    std::vector<bool> dense;
    EdgeSet e_sparse;
    EdgeSet e_dense;

    bool sparse(Vertex v) const { return !dense[v]; }
    std::vector<Vertex> sparse_vertices() const;
    std::vector<Vertex> dense_vertices() const;
};

Partition classify(const Graph& g, unsigned k, const NNResult& nn);

// Throws ConsistencyError naming the first broken invariant.
void check_partition(const Graph& g, const Partition& p);

}  // namespace spanner
