#include "doctest.h"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/partition.hpp"

using namespace spanner;

TEST_CASE("dense vertices follow the definition") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        for (const char* spec : {"gnp:150:0.03", "gnp:150:0.1", "barbell:20:6", "grid:12:12", "barbell:25:200"}) {
            Graph g = generate(GenSpec::parse(spec), seed);
            const unsigned k = 6 + 2 * (seed % 3);
            NNResult nn = nearest_neighbors(g, k);
            Partition p = classify(g, k, nn);
            CHECK_NOTHROW(check_partition(g, p));
            const std::size_t n = g.n();
            const double t = std::pow(static_cast<double>(n), 0.5 - 1.0 / k);
            std::vector<bool> heavy(n);
            for (Vertex v = 0; v < n; ++v) heavy[v] = g.degree(v) * g.degree(v) >= n;
            std::vector<std::set<Vertex>> light(n);
            for (const auto& e : g.edges())
                if (!heavy[e.u] && !heavy[e.v]) {
                    light[e.u].insert(e.v);
                    light[e.v].insert(e.u);
                }
            for (Vertex v = 0; v < n; ++v) {
                bool dense = heavy[v];
                for (Vertex u : g.neighbors(v)) dense = dense || heavy[u];
                if (!heavy[v]) {
                    auto d = oracle::bfs(light, v);
                    std::size_t within = 0;
                    for (auto x : d) within += x <= k / 2 - 1;
                    dense = dense || within > t;
                }
                CHECK(p.dense[v] == dense);
            }
            CHECK(p.sparse_vertices().size() + p.dense_vertices().size() == n);
        }
    }
}

TEST_CASE("star: hub is heavy, everyone is dense") {
    Graph g = generate(GraphModel::Star, {40}, 0);
    Partition p = classify(g, 6, nearest_neighbors(g, 6));
    CHECK(p.heavy[0]);
    CHECK(p.sparse_vertices().empty());
    CHECK(p.e_dense.size() == g.m());
}

TEST_CASE("long path is all sparse") {
    // balls of radius 2 hold 5 vertices, below 1000^(1/3) = 10
    Graph g = generate(GraphModel::Path, {1000}, 0);
    Partition p = classify(g, 6, nearest_neighbors(g, 6));
    CHECK(p.dense_vertices().empty());
    CHECK(p.e_sparse.size() == g.m());
}

TEST_CASE("broken partitions are caught") {
    Graph g = generate(GraphModel::Star, {40}, 0);
    Partition p = classify(g, 6, nearest_neighbors(g, 6));
    p.dense[3] = false;
    CHECK_THROWS_AS(check_partition(g, p), ConsistencyError);
    Graph h = generate(GraphModel::Path, {10}, 0);
    CHECK_THROWS_AS(classify(h, 8, nearest_neighbors(h, 6)), InputError);
}
