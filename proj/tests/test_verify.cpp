#include "doctest.h"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/rng.hpp"
#include "spanner/verify.hpp"

using namespace spanner;

namespace {

EdgeSet edge_set(std::size_t n, const std::vector<Edge>& edges) {
    EdgeSet s(n);
    for (const Edge& e : edges) s.insert(e);
    return s;
}

}  // namespace

TEST_CASE("stretch audit examples") {
    Graph c5 = generate(GraphModel::Cycle, {5}, 0);
    auto self = audit_stretch(c5, edge_set(5, c5.edges()), 1);
    CHECK(self.max == 1);
    CHECK(self.pass);

    std::vector<Edge> path = c5.edges();
    path.erase(std::find(path.begin(), path.end(), Edge(0, 4)));
    auto a = audit_stretch(c5, edge_set(5, path), 3);
    CHECK(a.max == 4);
    CHECK(a.argmax == Edge(0, 4));
    CHECK_FALSE(a.pass);
    CHECK(a.histogram[1] == 4);
    CHECK(a.histogram[4] == 1);

    Graph k4 = generate(GraphModel::Complete, {4}, 0);
    auto star = audit_stretch(k4, edge_set(4, {{0, 1}, {0, 2}, {0, 3}}), 3);
    CHECK(star.max == 2);
    CHECK(star.pass);

    CHECK_THROWS_AS(audit_stretch(c5, edge_set(5, {{0, 2}}), 3), InputError);

    auto gone = audit_stretch(c5, edge_set(5, {{0, 1}}), 3);
    CHECK(gone.max == kInf);
    CHECK_FALSE(gone.pass);
}

TEST_CASE("stretch audit agrees with all-pairs distances") {
    CounterRng rng(1);
    std::uint64_t c = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Graph g = generate(GraphModel::Gnp, {30 + static_cast<double>(seed % 20), 0.15}, seed);
        EdgeSet h(g.n());
        for (const Edge& e : g.edges())
            if (rng.bernoulli(c++, 0.6)) h.insert(e);
        auto audit = audit_stretch(g, h, 5);
        auto d = all_pairs_distances(h.as_graph());
        auto edges = g.edges();
        std::uint32_t worst = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            CHECK(audit.stretch[i] == d[edges[i].u][edges[i].v]);
            worst = std::max(worst, audit.stretch[i]);
        }
        CHECK(audit.max == worst);
        CHECK(audit.pass == (worst <= 5));
        CHECK(worst == (oracle::max_stretch(g, h.sorted()) == oracle::kFar ? kInf : oracle::max_stretch(g, h.sorted())));
    }
}

TEST_CASE("oracle limit") {
    Graph g = generate(GraphModel::Path, {6000}, 0);
    CHECK_THROWS_AS(audit_stretch(g, edge_set(g.n(), g.edges()), 1), ResourceError);
}

TEST_CASE("cluster audit") {
    Graph g = generate(GraphModel::Path, {5}, 0);
    Clustering c(5);
    for (Vertex v = 0; v < 5; ++v) c.center[v] = 2;
    c.parent = {1, 2, kNoVertex, 2, 3};
    EdgeSet h = edge_set(5, g.edges());
    auto ok = audit_clustering(g, c, h, 2);
    CHECK(ok.pass);
    CHECK(ok.max_depth == 2);
    CHECK_FALSE(audit_clustering(g, c, h, 1).pass);

    EdgeSet missing = edge_set(5, {{0, 1}, {1, 2}, {2, 3}});
    auto m = audit_clustering(g, c, missing, 2);
    CHECK_FALSE(m.pass);
    CHECK(m.message.find("(4,3)") != std::string::npos);

    Clustering cyc = c;
    cyc.parent[3] = 4;
    cyc.parent[4] = 3;
    CHECK_FALSE(audit_clustering(g, cyc, h, 4).pass);

    Clustering foreign = c;
    foreign.center[4] = 0;
    CHECK_FALSE(audit_clustering(g, foreign, h, 2).pass);

    CHECK(cluster_depth_in(g, {0, 1, 2, 3, 4}, 2) == 2);
    CHECK(cluster_depth_in(g, {0, 2}, 2) == kInf);
}
