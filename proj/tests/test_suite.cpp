#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/suite.hpp"

using namespace spanner;

namespace {

bool subgraph(const Graph& g, const EdgeSet& h) {
    for (const Edge& e : h.sorted())
        if (!g.has_edge(e.u, e.v)) return false;
    return true;
}

double log_envelope(std::size_t n, unsigned k) {
    double ln = std::log(static_cast<double>(n));
    return 2.0 * k * std::pow(static_cast<double>(n), 1.0 + 1.0 / k) * ln * ln;
}

}  // namespace

TEST_CASE("randomized on G(200, 0.1)") {
    Graph g = generate(GraphModel::Gnp, {200, 0.1}, 42);
    SpannerRun run = randomized_spanner(g, 6, 42);
    CHECK(run.report.success);
    CHECK(subgraph(g, run.h));
    CHECK(oracle::max_stretch(g, run.h.sorted()) <= 11u);
    CHECK(run.report.max_stretch <= 11);
    CHECK(static_cast<double>(run.h.size()) <= log_envelope(200, 6));
    CHECK(run.report.violations == 0);
    CHECK(run.report.rounds == run.ledger.total());
}

TEST_CASE("a tree is its own spanner") {
    Graph g = generate(GraphModel::Star, {30}, 0);
    for (auto run : {randomized_spanner(g, 6, 1), deterministic_spanner(g, 8)}) {
        CHECK(run.h.size() == g.m());
        CHECK(run.report.success);
    }
    Graph path = generate(GraphModel::Path, {9}, 0);
    CHECK(deterministic_spanner(path, 6).h.size() == 8);
}

TEST_CASE("complete graph is sparsified") {
    Graph g = generate(GraphModel::Complete, {50}, 0);
    for (auto run : {randomized_spanner(g, 6, 3), deterministic_spanner(g, 6)}) {
        CHECK(run.report.success);
        CHECK(oracle::max_stretch(g, run.h.sorted()) <= 11u);
        CHECK(run.h.size() < 1225);
    }
}

TEST_CASE("deterministic runs repeat exactly") {
    Graph g = generate(GraphModel::Gnp, {128, 0.15}, 5);
    SpannerRun a = deterministic_spanner(g, 6), b = deterministic_spanner(g, 6);
    CHECK(a.h.sorted() == b.h.sorted());
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(a.report.success);
    CHECK(oracle::max_stretch(g, a.h.sorted()) <= 11u);
}

TEST_CASE("contraction algorithm") {
    Graph g = generate(GraphModel::Gnp, {500, 0.05}, 8);
    SpannerRun run = ok_spanner(g, 8);
    CHECK(run.report.success);
    CHECK(run.report.depth_audit);
    CHECK(subgraph(g, run.h));
    double stretch = oracle::max_stretch(g, run.h.sorted());
    CHECK(stretch / 8 <= kOkAlpha);
    CHECK(run.report.alpha() == doctest::Approx(stretch / 8));
    CHECK_FALSE(run.report.phases.empty());
    CHECK(run.report.phases.front().k_prime == 8);
    for (std::size_t i = 1; i < run.report.phases.size(); ++i) CHECK(run.report.phases[i].k_prime == 7);
}

TEST_CASE("Baswana-Sen baseline") {
    Graph g = generate(GraphModel::Gnp, {200, 0.1}, 1);
    CHECK(baswana_sen(g, 1, 0).h.size() == g.m());
    SpannerRun run = baswana_sen(g, 6, 4);
    CHECK(run.report.success);
    CHECK(oracle::max_stretch(g, run.h.sorted()) <= 11u);
    Graph c10 = generate(GraphModel::Cycle, {10}, 0);
    SpannerRun cyc = baswana_sen(c10, 3, 0);
    CHECK(oracle::max_stretch(c10, cyc.h.sorted()) <= 5u);
}

TEST_CASE("small k") {
    Graph k5 = generate(GraphModel::Complete, {5}, 0);
    SpannerRun run = small_k_spanner(k5, 2, HitBackend::Derand);
    CHECK(run.report.success);
    CHECK(oracle::max_stretch(k5, run.h.sorted()) <= 3u);
    Graph c4 = generate(GraphModel::Cycle, {4}, 0);
    SpannerRun cyc = small_k_spanner(c4, 2, HitBackend::Derand);
    CHECK(cyc.h.size() >= 3);  // no 2 edges of C4 give stretch 3
    CHECK(oracle::max_stretch(c4, cyc.h.sorted()) <= 3u);
    for (unsigned k = 2; k <= 5; ++k) {
        Graph g = generate(GraphModel::Gnp, {150, 0.1}, k);
        SpannerRun a = small_k_spanner(g, k, HitBackend::Derand), b = small_k_spanner(g, k, HitBackend::Derand);
        CHECK(a.h.sorted() == b.h.sorted());
        CHECK(oracle::max_stretch(g, a.h.sorted()) <= 2 * k - 1);
    }
}

TEST_CASE("unsupported k") {
    Graph g = generate(GraphModel::Path, {10}, 0);
    CHECK_THROWS_AS(randomized_spanner(g, 4, 0), UnsupportedK);
    CHECK_THROWS_AS(deterministic_spanner(g, 5), UnsupportedK);
}

TEST_CASE("algorithm names") {
    for (auto a : {Algorithm::Randomized, Algorithm::Deterministic, Algorithm::Ok, Algorithm::BaswanaSen,
                   Algorithm::SmallK})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK(parse_algorithm("bs") == Algorithm::BaswanaSen);
    CHECK_THROWS_AS(parse_algorithm("fast"), InputError);
}

TEST_CASE("report formats") {
    Graph g = generate(GraphModel::Gnp, {100, 0.1}, 2);
    SuiteOptions opt;
    opt.seed = 2;
    SpannerRun run = run_algorithm(Algorithm::Randomized, g, 6, opt);
    CHECK(SpannerReport::csv_header() == "algorithm,n,m,k,edges,max_stretch,rounds,routing_rounds,seed,success");
    std::string row = run.report.csv_row();
    CHECK(std::count(row.begin(), row.end(), ',') == 9);
    CHECK(row.rfind("randomized,100,", 0) == 0);
    auto j = nlohmann::json::parse(run.report.to_json());
    CHECK(j.at("edges").get<std::size_t>() == run.h.size());
    CHECK(j.at("k").get<unsigned>() == 6);
    CHECK(j.at("success").get<bool>() == run.report.success);
    CHECK(j.contains("size_ratio_log"));

    opt.audit = false;
    SpannerRun quiet = run_algorithm(Algorithm::Randomized, g, 6, opt);
    CHECK(quiet.report.max_stretch == -1);
    CHECK(quiet.report.csv_row().find(",-1,") != std::string::npos);

    SpannerReport broken = run.report;
    broken.max_stretch = std::numeric_limits<double>::infinity();
    CHECK(broken.csv_row().find(",inf,") != std::string::npos);
    CHECK(nlohmann::json::parse(broken.to_json()).at("max_stretch").is_null());
}
