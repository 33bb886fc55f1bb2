#include "spanner/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "spanner/dense.hpp"
#include "spanner/errors.hpp"
#include "spanner/nearest.hpp"
#include "spanner/params.hpp"
#include "spanner/partition.hpp"
#include "spanner/rng.hpp"
#include "spanner/sparse.hpp"
#include "spanner/verify.hpp"

namespace spanner {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "randomized") return Algorithm::Randomized;
    if (name == "deterministic") return Algorithm::Deterministic;
    if (name == "ok") return Algorithm::Ok;
    if (name == "baswana-sen" || name == "bs") return Algorithm::BaswanaSen;
    if (name == "small-k") return Algorithm::SmallK;
    throw InputError("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Randomized: return "randomized";
        case Algorithm::Deterministic: return "deterministic";
        case Algorithm::Ok: return "ok";
        case Algorithm::BaswanaSen: return "baswana-sen";
        case Algorithm::SmallK: return "small-k";
    }
    return "?";
}

namespace {

std::string fmt6(double x) {
    if (std::isinf(x)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double round6(double x) { return std::isfinite(x) ? std::stod(fmt6(x)) : x; }

NetworkConfig network_config(const SuiteOptions& opt) {
    NetworkConfig cfg;
    cfg.routing_cost = opt.routing_cost;
    return cfg;
}

SpannerRun start(const Graph& g, const std::string& name, const std::string& backend, std::uint64_t seed) {
    SpannerRun run;
    run.h = EdgeSet(g.n());
    run.report.algorithm = name;
    run.report.backend = backend;
    run.report.seed = seed;
    return run;
}

void finish(SpannerRun& run, const Graph& g, unsigned k, double bound, const SuiteOptions& opt,
            const Network& net) {
    auto& r = run.report;
    r.k = k;
    r.n = g.n();
    r.m = g.m();
    r.edges = run.h.size();
    r.stretch_bound = bound;
    run.ledger = net.ledger();
    r.rounds = run.ledger.total();
    r.routing_rounds = run.ledger.routing_rounds;
    r.violations = run.ledger.violations.size();
    r.max_routing_words = run.ledger.max_routing_words();
    if (r.failure.empty() && opt.audit && g.n() <= oracle_limit()) {
        StretchAudit a = audit_stretch(g, run.h, bound);
        r.audited = true;
        r.max_stretch = a.max == kInf ? std::numeric_limits<double>::infinity() : a.max;
        if (!a.pass)
            r.failure = "stretch " + fmt6(r.max_stretch) + " on edge (" + std::to_string(a.argmax.u) + "," +
                        std::to_string(a.argmax.v) + ") exceeds " + fmt6(bound);
    }
    if (r.failure.empty() && r.violations) r.failure = "message budget violated";
    if (r.failure.empty() && !r.depth_audit) r.failure = r.depth_failure;
    r.success = r.failure.empty();
}

SpannerRun two_region(const Graph& g, unsigned k, HitBackend backend, std::uint64_t seed, const SuiteOptions& opt,
                      const std::string& name) {
    if (k < 6) throw UnsupportedK("algorithm " + name + " needs k >= 6; use small-k for k in 2..5");
    Network net(g.n(), network_config(opt));
    net.set_transcript(opt.transcript);
    SpannerRun run = start(g, name, backend_name(backend), seed);
    if (g.m() > 0) {
        try {
            NNResult nn = nearest_neighbors(g, k, net);
            Partition p = classify(g, k, nn);
            net.charge_broadcast();
            auto views = build_local_views(g, p, nn, net);
            SparseResult sp = cons_spanner_sparse(g, p, k, views, net);
            DenseOptions d;
            d.backend = backend;
            d.profile = BetaProfile::Log;
            d.seed = seed;
            DenseResult dn = cons_spanner_dense(g, p, k, nn, net, d);
            run.h.insert_all(sp.h_sparse);
            run.h.insert_all(dn.h_dense);
            auto& r = run.report;
            r.nn_phases = nn.phases;
            r.sparse_edges = sp.h_sparse.size();
            r.dense_edges = dn.h_dense.size();
            r.patched = dn.first.patched + dn.second.patched;
            r.max_inactive_round = sp.max_inactive_round;
        } catch (const HittingFailure& e) {
            run.report.failure = std::string("hitting failure: ") + e.what() + " (rerun with another seed)";
        }
    }
    finish(run, g, k, 2.0 * k - 1, opt, net);
    return run;
}

// Adds witness edges to H after an O(1)-round exchange: the node simulating
// each virtual endpoint tells the witness endpoint in its cluster.
void materialize(const std::vector<Edge>& virtual_edges, const std::vector<Vertex>& vnodes,
                 const std::unordered_map<std::uint64_t, Edge>& witness, const std::vector<Vertex>& owner,
                 Network& net, EdgeSet& h) {
    std::vector<Message> msgs;
    for (const Edge& e : virtual_edges) {
        const Edge& w = witness.at(e.key());
        Vertex x = owner[w.u] == e.u ? w.u : w.v;
        Vertex y = x == w.u ? w.v : w.u;
        msgs.push_back({vnodes[e.u], x, {w.key()}});
        msgs.push_back({vnodes[e.v], y, {w.key()}});
    }
    Inboxes in = net.route_batched(std::move(msgs));
    for (const auto& box : in)
        for (const auto& m : box) h.insert(Edge::from_key(m.payload[0]));
}

}  // namespace

double SpannerReport::size_ratio() const {
    if (!n || !k) return 0;
    return edges / (k * std::pow(static_cast<double>(n), 1.0 + 1.0 / k));
}

double SpannerReport::size_ratio_log() const {
    if (n < 2) return 0;
    double ln = std::log(static_cast<double>(n));
    return size_ratio() / (ln * ln);
}

std::string SpannerReport::csv_header() {
    return "algorithm,n,m,k,edges,max_stretch,rounds,routing_rounds,seed,success";
}

std::string SpannerReport::csv_row() const {
    return algorithm + "," + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + "," +
           std::to_string(edges) + "," + fmt6(max_stretch) + "," + std::to_string(rounds) + "," +
           std::to_string(routing_rounds) + "," + std::to_string(seed) + "," + (success ? "true" : "false");
}

std::string SpannerReport::to_json() const {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm;
    j["backend"] = backend;
    j["n"] = n;
    j["m"] = m;
    j["k"] = k;
    j["edges"] = edges;
    if (std::isinf(max_stretch))
        j["max_stretch"] = nullptr;
    else
        j["max_stretch"] = round6(max_stretch);
    j["stretch_bound"] = round6(stretch_bound);
    j["audited"] = audited;
    j["alpha"] = std::isinf(max_stretch) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(round6(alpha()));
    j["size_ratio"] = round6(size_ratio());
    j["size_ratio_log"] = round6(size_ratio_log());
    j["rounds"] = rounds;
    j["routing_rounds"] = routing_rounds;
    j["violations"] = violations;
    j["max_routing_words"] = max_routing_words;
    j["nn_phases"] = nn_phases;
    j["sparse_edges"] = sparse_edges;
    j["dense_edges"] = dense_edges;
    j["patched"] = patched;
    j["max_inactive_round"] = max_inactive_round;
    if (!phases.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& p : phases)
            arr.push_back({{"k_prime", p.k_prime},
                           {"nodes", p.nodes},
                           {"edges", p.edges},
                           {"dense", p.dense},
                           {"clusters", p.clusters}});
        j["phases"] = arr;
        j["depth_audit"] = depth_audit;
    }
    j["seed"] = seed;
    j["success"] = success;
    if (!failure.empty()) j["failure"] = failure;
    return j.dump();
}

SpannerRun randomized_spanner(const Graph& g, unsigned k, std::uint64_t seed, const SuiteOptions& opt) {
    return two_region(g, k, HitBackend::Random, seed, opt, "randomized");
}

SpannerRun deterministic_spanner(const Graph& g, unsigned k, const SuiteOptions& opt) {
    return two_region(g, k, HitBackend::Derand, 0, opt, "deterministic");
}

SpannerRun ok_spanner(const Graph& g, unsigned k, const SuiteOptions& opt) {
    if (k < 6) throw UnsupportedK("algorithm ok needs k >= 6");
    const std::size_t n = g.n();
    const HitBackend backend = opt.backend_set ? opt.backend : HitBackend::Derand;
    NetworkConfig cfg = network_config(opt);
    Network net(n, cfg);
    net.set_transcript(opt.transcript);
    SpannerRun run = start(g, "ok", backend_name(backend), backend == HitBackend::Derand ? 0 : opt.seed);
    auto& rep = run.report;

    // virtual node j is simulated by original vertex vnodes[j]
    std::vector<Vertex> vnodes(n);
    std::iota(vnodes.begin(), vnodes.end(), Vertex{0});
    std::vector<std::vector<Vertex>> members(n);
    for (Vertex v = 0; v < n; ++v) members[v] = {v};
    std::vector<Vertex> owner = vnodes;
    Graph vg = g;
    std::unordered_map<std::uint64_t, Edge> witness;
    for (const Edge& e : g.edges()) witness.emplace(e.key(), e);

    struct Snapshot {
        unsigned phase;
        Vertex root;
        std::vector<Vertex> members;
    };
    std::vector<Snapshot> snaps;
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    try {
        for (unsigned i = 0; vg.m() > 0; ++i) {
            if (i >= 4 && (static_cast<double>(vnodes.size()) < sqrt_n || i >= 8)) break;
            const unsigned kp = i == 0 ? k : 7;
            const std::size_t nv = vnodes.size();
            NetworkConfig vc = cfg;
            vc.capacity_n = n;
            Network vnet(nv, vc);
            NNOptions nno;
            nno.n_ref = n;
            NNResult nn = nearest_neighbors(vg, kp, vnet, nno);
            Partition p = classify(vg, kp, nn);
            vnet.charge_broadcast();
            auto views = build_local_views(vg, p, nn, vnet);
            SparseResult sp = cons_spanner_sparse(vg, p, kp, views, vnet, n);
            DenseOptions d;
            d.backend = backend;
            d.profile = BetaProfile::Sqrt;
            d.seed = mix64(opt.seed + i);
            d.n_ref = n;
            FirstLevel first = build_first_clustering(vg, p, kp, nn, vnet, d);
            EdgeSet links = connect_clusters(vg, first.c1, first.c1, vnet);
            net.ledger().append(vnet.ledger());
            if (i == 0) rep.nn_phases = nn.phases;
            rep.patched += first.patched;

            EdgeSet vh(nv);
            vh.insert_all(sp.h_sparse);
            vh.insert_all(first.edges);
            rep.sparse_edges += sp.h_sparse.size();
            rep.dense_edges += first.edges.size();
            rep.max_inactive_round = std::max(rep.max_inactive_round, sp.max_inactive_round);
            auto vh_edges = vh.sorted();
            if (i == 0) {
                for (const Edge& e : vh_edges) run.h.insert(e);
            } else {
                materialize(vh_edges, vnodes, witness, owner, net, run.h);
            }

            // contract C_1 clusters into the next virtual graph
            const Clustering& c1 = first.c1;
            std::vector<Vertex> next_index(nv, kNoVertex);
            std::vector<Vertex> next_nodes;
            for (Vertex s = 0; s < nv; ++s)
                if (c1.center[s] == s) {
                    next_index[s] = static_cast<Vertex>(next_nodes.size());
                    next_nodes.push_back(vnodes[s]);
                }
            std::vector<std::vector<Vertex>> next_members(next_nodes.size());
            std::vector<Vertex> next_owner(n, kNoVertex);
            for (Vertex a = 0; a < nv; ++a) {
                if (!c1.clustered(a)) continue;
                Vertex j = next_index[c1.center[a]];
                for (Vertex x : members[a]) {
                    next_members[j].push_back(x);
                    next_owner[x] = j;
                }
            }
            std::map<std::uint64_t, Edge> next_witness;
            for (const Edge& e : links.sorted()) {
                Vertex a = next_index[c1.center[e.u]];
                Vertex b = next_index[c1.center[e.v]];
                if (a == b) continue;
                const Edge& w = witness.at(e.key());
                auto [it, fresh] = next_witness.emplace(Edge(a, b).key(), w);
                if (!fresh && w.key() < it->second.key()) it->second = w;
            }
            std::vector<Edge> next_edges;
            witness.clear();
            for (const auto& [key, w] : next_witness) {
                next_edges.push_back(Edge::from_key(key));
                witness.emplace(key, w);
            }

            OkPhase ph;
            ph.k_prime = kp;
            ph.nodes = nv;
            ph.edges = vg.m();
            ph.dense = p.dense_vertices().size();
            ph.clusters = next_nodes.size();
            rep.phases.push_back(ph);

            for (Vertex j = 0; j < next_nodes.size(); ++j) {
                std::sort(next_members[j].begin(), next_members[j].end());
                snaps.push_back({i + 1, next_nodes[j], next_members[j]});
            }
            vg = Graph::from_edges(next_nodes.size(), next_edges);
            vnodes = std::move(next_nodes);
            members = std::move(next_members);
            owner = std::move(next_owner);
        }
        // connect every remaining pair of adjacent clusters
        materialize(vg.edges(), vnodes, witness, owner, net, run.h);
    } catch (const HittingFailure& e) {
        rep.failure = std::string("hitting failure: ") + e.what();
    }

    if (rep.failure.empty()) {
        Graph hg = run.h.as_graph();
        for (const auto& s : snaps) {
            double bound = std::pow(7.0, s.phase) * k;
            std::uint32_t depth = cluster_depth_in(hg, s.members, s.root);
            if (depth == kInf || depth > bound) {
                rep.depth_audit = false;
                rep.depth_failure = "cluster of " + std::to_string(s.root) + " in phase " +
                                    std::to_string(s.phase) + " has depth " +
                                    (depth == kInf ? std::string("inf") : std::to_string(depth)) + " > " +
                                    fmt6(bound);
                break;
            }
        }
    }
    finish(run, g, k, kOkAlpha * k, opt, net);
    return run;
}

SpannerRun baswana_sen(const Graph& g, unsigned k, std::uint64_t seed, const SuiteOptions& opt) {
    if (k < 1) throw InputError("baswana-sen needs k >= 1");
    const std::size_t n = g.n();
    Network net(n, network_config(opt));
    net.set_transcript(opt.transcript);
    SpannerRun run = start(g, "baswana-sen", "random", seed);
    if (k == 1) {
        for (const Edge& e : g.edges()) run.h.insert(e);
        finish(run, g, k, 1, opt, net);
        return run;
    }
    const double p = std::pow(static_cast<double>(n), -1.0 / k);
    const CounterRng rng = CounterRng(seed).split(0x627331ULL);
    std::vector<Vertex> center(n);
    std::iota(center.begin(), center.end(), Vertex{0});
    std::vector<std::vector<Vertex>> radj(n);
    for (Vertex v = 0; v < n; ++v) radj[v] = g.neighbors(v);

    // least remaining edge from v into each adjacent cluster
    auto least_per_cluster = [&](Vertex v) {
        std::map<Vertex, Vertex> least;
        for (Vertex u : radj[v]) {
            Vertex c = center[u];
            if (c == kNoVertex) continue;
            auto it = least.find(c);
            if (it == least.end() || Edge(v, u).key() < Edge(v, it->second).key()) least[c] = u;
        }
        return least;
    };

    for (unsigned level = 1; level < k; ++level) {
        net.charge_broadcast();
        const CounterRng draw = rng.split(level);
        std::vector<bool> sampled(n, false);
        for (Vertex c = 0; c < n; ++c)
            if (center[c] == c) sampled[c] = draw.bernoulli(c, p);
        std::vector<Vertex> next(n, kNoVertex);
        // dropped[v] holds clusters whose edges v gives up
        std::vector<std::vector<Vertex>> dropped(n);
        std::vector<bool> drop_all(n, false);
        for (Vertex v = 0; v < n; ++v) {
            if (center[v] == kNoVertex) continue;
            if (sampled[center[v]]) {
                next[v] = center[v];
                continue;
            }
            auto least = least_per_cluster(v);
            Vertex best_c = kNoVertex, best_u = kNoVertex;
            for (const auto& [c, u] : least)
                if (sampled[c] && (best_u == kNoVertex || Edge(v, u).key() < Edge(v, best_u).key())) {
                    best_c = c;
                    best_u = u;
                }
            if (best_u == kNoVertex) {
                for (const auto& [c, u] : least) run.h.insert(v, u);
                drop_all[v] = true;
                continue;
            }
            run.h.insert(v, best_u);
            next[v] = best_c;
            const auto best_key = Edge(v, best_u).key();
            for (const auto& [c, u] : least)
                if (Edge(v, u).key() < best_key) {
                    run.h.insert(v, u);
                    dropped[v].push_back(c);
                }
            dropped[v].push_back(best_c);
        }
        std::vector<std::vector<Vertex>> kept(n);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u : radj[v]) {
                bool gone = drop_all[v] || drop_all[u];
                gone = gone || std::find(dropped[v].begin(), dropped[v].end(), center[u]) != dropped[v].end();
                gone = gone || std::find(dropped[u].begin(), dropped[u].end(), center[v]) != dropped[u].end();
                if (!gone) kept[v].push_back(u);
            }
        center = std::move(next);
        for (Vertex v = 0; v < n; ++v) {
            auto& list = kept[v];
            list.erase(std::remove_if(list.begin(), list.end(),
                                      [&](Vertex u) {
                                          return center[v] != kNoVertex && center[u] == center[v];
                                      }),
                       list.end());
        }
        radj = std::move(kept);
        net.charge_broadcast();
    }
    net.charge_broadcast();
    for (Vertex v = 0; v < n; ++v)
        for (const auto& [c, u] : least_per_cluster(v)) run.h.insert(v, u);
    finish(run, g, k, 2.0 * k - 1, opt, net);
    return run;
}

SpannerRun small_k_spanner(const Graph& g, unsigned k, HitBackend backend, const SuiteOptions& opt) {
    if (k < 2 || k > 5) throw UnsupportedK("small-k handles k in 2..5");
    const std::size_t n = g.n();
    Network net(n, network_config(opt));
    net.set_transcript(opt.transcript);
    const std::uint64_t seed = backend == HitBackend::Derand ? 0 : opt.seed;
    SpannerRun run = start(g, "small-k", backend_name(backend), seed);
    std::vector<Vertex> center(n);
    std::iota(center.begin(), center.end(), Vertex{0});
    const std::size_t threshold = cluster_threshold(n, k);

    auto min_neighbor_in = [&](Vertex v, Vertex s) {
        for (Vertex u : g.neighbors(v))
            if (center[u] == s) return u;
        return kNoVertex;
    };

    try {
        for (unsigned level = 1; level < k && g.m() > 0; ++level) {
            net.charge_broadcast();
            std::vector<std::vector<Vertex>> adjacent(n);
            std::vector<bool> low(n, false);
            std::vector<std::pair<Vertex, std::vector<Vertex>>> sets;
            for (Vertex v = 0; v < n; ++v) {
                if (center[v] == kNoVertex) continue;
                auto& adj = adjacent[v];
                adj.push_back(center[v]);
                for (Vertex u : g.neighbors(v))
                    if (center[u] != kNoVertex) adj.push_back(center[u]);
                std::sort(adj.begin(), adj.end());
                adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
                if (adj.size() < threshold) {
                    low[v] = true;
                    for (Vertex s : adj)
                        if (s != center[v]) run.h.insert(v, min_neighbor_in(v, s));
                } else {
                    sets.emplace_back(v, adj);
                }
            }
            std::vector<bool> in_z(n, false);
            if (!sets.empty()) {
                HittingSetInstance inst = make_hitting_instance(std::move(sets), n);
                HitOutcome hit = compute_hitting_set(inst, backend, BetaProfile::Log, mix64(opt.seed ^ level));
                net.charge_plain(hit.rounds);
                run.report.patched += hit.patched;
                if (!hit.all_hit) throw HittingFailure("level " + std::to_string(level) + " hitting set misses a vertex");
                for (Vertex s : hit.z) in_z[s] = true;
            }
            net.charge_broadcast();
            std::vector<Vertex> next(n, kNoVertex);
            for (Vertex v = 0; v < n; ++v) {
                if (center[v] == kNoVertex) continue;
                if (in_z[center[v]]) {
                    next[v] = center[v];
                    continue;
                }
                if (low[v]) continue;
                Vertex s = kNoVertex;
                for (Vertex a : adjacent[v])
                    if (in_z[a]) {
                        s = a;
                        break;
                    }
                if (s == kNoVertex) throw HittingFailure("vertex " + std::to_string(v) + " has no center in Z");
                run.h.insert(v, min_neighbor_in(v, s));
                next[v] = s;
            }
            center = std::move(next);
        }
        net.charge_broadcast();
        for (Vertex v = 0; v < n; ++v) {
            std::vector<Vertex> seen;
            for (Vertex u : g.neighbors(v)) {
                Vertex s = center[u];
                if (s == kNoVertex || s == center[v]) continue;
                if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
                seen.push_back(s);
                run.h.insert(v, u);
            }
        }
    } catch (const HittingFailure& e) {
        run.report.failure = std::string("hitting failure: ") + e.what() + " (rerun with another seed)";
    }
    finish(run, g, k, 2.0 * k - 1, opt, net);
    return run;
}

SpannerRun run_algorithm(Algorithm a, const Graph& g, unsigned k, const SuiteOptions& opt) {
    switch (a) {
        case Algorithm::Randomized: return randomized_spanner(g, k, opt.seed, opt);
        case Algorithm::Deterministic: return deterministic_spanner(g, k, opt);
        case Algorithm::Ok: return ok_spanner(g, k, opt);
        case Algorithm::BaswanaSen: return baswana_sen(g, k, opt.seed, opt);
        case Algorithm::SmallK: return small_k_spanner(g, k, opt.backend, opt);
    }
    throw InputError("unknown algorithm");
}

}  // namespace spanner
