#include "spanner/partition.hpp"

#include <string>

#include "spanner/errors.hpp"

namespace spanner {

std::vector<Vertex> Partition::sparse_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < dense.size(); ++v)
        if (!dense[v]) out.push_back(v);
    return out;
}

std::vector<Vertex> Partition::dense_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < dense.size(); ++v)
        if (dense[v]) out.push_back(v);
    return out;
}

Partition classify(const Graph& g, unsigned k, const NNResult& nn) {
    if (nn.n != g.n() || nn.k != k) throw InputError("nearest-neighbor result was computed for another (n, k)");
    const std::size_t n = g.n();
    Partition p;
    p.heavy = nn.heavy;
    p.dense.assign(n, false);
    for (Vertex v = 0; v < n; ++v) {
        if (p.heavy[v] || nn.exceeds[v]) p.dense[v] = true;
        if (p.heavy[v])
            for (Vertex u : g.neighbors(v)) p.dense[u] = true;
    }
    p.e_sparse = EdgeSet(n);
    p.e_dense = EdgeSet(n);
    for (const Edge& e : g.edges()) {
        if (p.dense[e.u] && p.dense[e.v])
            p.e_dense.insert(e);
        else
            p.e_sparse.insert(e);
    }
    return p;
}

void check_partition(const Graph& g, const Partition& p) {
    auto fail = [](const std::string& what) { throw ConsistencyError("partition: " + what); };
    if (p.dense.size() != g.n() || p.heavy.size() != g.n()) fail("label vectors have the wrong size");
    for (Vertex v = 0; v < g.n(); ++v) {
        if (p.heavy[v] && !p.dense[v]) fail("heavy vertex " + std::to_string(v) + " is not dense");
        if (!p.dense[v])
            for (Vertex u : g.neighbors(v))
                if (p.heavy[u]) fail("sparse vertex " + std::to_string(v) + " has a heavy neighbor");
    }
    if (p.e_sparse.size() + p.e_dense.size() != g.m()) fail("edge split does not cover E");
    for (const Edge& e : g.edges()) {
        bool in_d = p.e_dense.contains(e), in_s = p.e_sparse.contains(e);
        if (in_d == in_s) fail("edge in both or neither part");
        if (in_d && !(p.dense[e.u] && p.dense[e.v])) fail("dense edge with a sparse endpoint");
        if (in_s && p.dense[e.u] && p.dense[e.v]) fail("sparse edge without a sparse endpoint");
    }
}

}  // namespace spanner
