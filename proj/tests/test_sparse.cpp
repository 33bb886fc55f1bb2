#include "checks.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/sparse.hpp"

using namespace spanner;

TEST_CASE("LocalSpanner matches the set-based reference") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Graph g = generate(GraphModel::Gnp, {80, 0.04 + 0.02 * static_cast<double>(seed % 4)}, seed);
        for (std::uint32_t rounds : {1u, 2u, 3u, 5u}) {
            for (std::size_t sig : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
                auto got = local_spanner_run(g, rounds, sig);
                auto want = oracle::local_spanner(g, rounds, sig);
                std::set<std::pair<Vertex, Vertex>> edges;
                for (const Edge& e : got.edges.sorted()) edges.insert({e.u, e.v});
                CHECK(edges == want.edges);
                CHECK(got.inactive_after == want.inactive_at);
            }
        }
    }
}

TEST_CASE("global LocalSpanner is a (2k-1)-spanner") {
    for (unsigned k : {2u, 3u, 4u, 6u}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            Graph g = generate(GraphModel::Gnp, {100, 0.1}, seed);
            EdgeSet h = local_spanner_global(g, k);
            CHECK(oracle::max_stretch(g, h.sorted()) <= 2 * k - 1);
            for (const Edge& e : h.sorted()) CHECK(g.has_edge(e.u, e.v));
        }
    }
}

TEST_CASE("sparse part claims") {
    for (const char* spec : {"gnp:200:0.02", "gnp:1000:0.002", "path:1000", "cycle:800", "barbell:30:300",
                             "grid:15:15"}) {
        for (unsigned k : {6u, 8u, 10u}) {
            Graph g = generate(GenSpec::parse(spec), 11);
            auto c = checks::sparse_claims(g, k, k / 2 - 1, k - 3);
            CAPTURE(spec);
            CAPTURE(k);
            CHECK(c.error == "");
            if (std::string(spec) != "grid:15:15" && std::string(spec) != "gnp:200:0.02") CHECK(c.sparse_vertices > 0);
        }
    }
}

TEST_CASE("sparse cliques lose edges within distance k-3") {
    Graph g = generate(GraphModel::Barbell, {10, 2000}, 0);
    auto c = checks::sparse_claims(g, 6, 2, 3);
    CHECK(c.error == "");
    CHECK(c.sparse_vertices == g.n() - 2);
    CHECK(c.omitted > 0);
}

TEST_CASE("views only exist for sparse vertices") {
    Graph g = generate(GraphModel::Barbell, {30, 300}, 0);
    Network net(g.n());
    NNResult nn = nearest_neighbors(g, 6, net);
    Partition p = classify(g, 6, nn);
    auto views = build_local_views(g, p, nn, net);
    for (Vertex v = 0; v < g.n(); ++v) CHECK(views[v].empty() == p.dense[v]);
    std::vector<LocalView> none(g.n());
    bool any_sparse = !p.sparse_vertices().empty();
    REQUIRE(any_sparse);
    CHECK_THROWS_AS(cons_spanner_sparse(g, p, 6, none, net), InputError);
}
