#include "spanner/dense.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "spanner/errors.hpp"
#include "spanner/params.hpp"

namespace spanner {

std::vector<Vertex> Clustering::centers() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < center.size(); ++v)
        if (center[v] == v) out.push_back(v);
    return out;
}

HittingSetInstance make_hitting_instance(std::vector<std::pair<Vertex, std::vector<Vertex>>> sets, std::size_t n_ref) {
    HittingSetInstance inst;
    inst.n = n_ref;
    inst.delta = 0;
    for (const auto& [owner, s] : sets) {
        inst.universe.insert(inst.universe.end(), s.begin(), s.end());
        inst.delta = inst.delta == 0 ? s.size() : std::min(inst.delta, s.size());
    }
    if (inst.delta == 0) inst.delta = 1;
    inst.sets = std::move(sets);
    inst.normalize();
    return inst;
}

FirstLevel build_first_clustering(const Graph& g, const Partition& p, unsigned k, const NNResult& nn,
                                  Network& net, const DenseOptions& opt) {
    const std::size_t n = g.n();
    const std::size_t n_ref = opt.n_ref ? opt.n_ref : n;
    FirstLevel out;
    out.c1 = Clustering(n);
    out.c1.depth_bound = radius_for(k);
    out.edges = EdgeSet(n);

    std::vector<bool> in_vprime(n, false);
    for (Vertex v = 0; v < n; ++v)
        if (!p.heavy[v])
            for (Vertex u : g.neighbors(v))
                if (p.heavy[u]) in_vprime[v] = true;

    std::vector<std::pair<Vertex, std::vector<Vertex>>> sets;
    for (Vertex v = 0; v < n; ++v) {
        if (!p.dense[v] || in_vprime[v]) continue;
        std::vector<Vertex> s;
        if (p.heavy[v]) {
            s = g.neighbors(v);
            s.push_back(v);
        } else {
            for (const auto& m : nn.trees[v].members) s.push_back(m.vertex);
        }
        std::sort(s.begin(), s.end());
        sets.emplace_back(v, std::move(s));
    }
    out.instance = make_hitting_instance(std::move(sets), n_ref);
    HitOutcome hit = compute_hitting_set(out.instance, opt.backend, opt.profile, opt.seed, opt.c);
    net.charge_plain(hit.rounds);
    net.charge_broadcast();
    if (!hit.all_hit) throw HittingFailure("first-level hitting set misses a dense neighborhood");
    out.z1 = hit.z;
    out.patched = hit.patched;
    std::vector<bool> in_z1(n, false);
    for (Vertex s : out.z1) in_z1[s] = true;

    auto& c1 = out.c1;
    for (Vertex v = 0; v < n; ++v) {
        if (p.heavy[v]) continue;
        const auto& tree = nn.trees[v];
        const TreeMember* hit_member = nullptr;
        for (const auto& m : tree.members)
            if (in_z1[m.vertex]) {
                hit_member = &m;
                break;
            }
        if (!hit_member) continue;
        c1.center[v] = hit_member->vertex;
        if (hit_member->vertex == v) continue;
        const TreeMember* cur = hit_member;
        while (cur->parent != v) {
            cur = tree.find(cur->parent);
            if (!cur) throw ConsistencyError("broken parent chain in the tree of " + std::to_string(v));
        }
        c1.parent[v] = cur->vertex;
        out.edges.insert(v, cur->vertex);
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!p.heavy[v]) continue;
        if (in_z1[v]) {
            c1.center[v] = v;
            continue;
        }
        for (Vertex u : g.neighbors(v))
            if (in_z1[u]) {
                c1.center[v] = u;
                c1.parent[v] = u;
                out.edges.insert(v, u);
                break;
            }
        if (!c1.clustered(v)) throw HittingFailure("heavy vertex " + std::to_string(v) + " has no center in Z_1");
    }
    // heavy vertices announce their centers
    net.charge_broadcast();
    for (Vertex u = 0; u < n; ++u) {
        if (p.heavy[u] || c1.clustered(u)) continue;
        for (Vertex h : g.neighbors(u))
            if (p.heavy[h]) {
                c1.center[u] = c1.center[h];
                c1.parent[u] = h;
                out.edges.insert(u, h);
                break;
            }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (p.dense[v] && !c1.clustered(v))
            throw HittingFailure("dense vertex " + std::to_string(v) + " is not covered by C_1");
        Vertex par = c1.parent[v];
        if (par != kNoVertex && c1.center[par] != c1.center[v])
            throw ConsistencyError("vertex " + std::to_string(v) + " and its tree parent " + std::to_string(par) +
                                   " chose different centers");
    }
    return out;
}

SecondLevel build_second_level(const Graph& g, const Partition& p, const Clustering& c1, unsigned k,
                               Network& net, const DenseOptions& opt) {
    const std::size_t n = g.n();
    const std::size_t n_ref = opt.n_ref ? opt.n_ref : n;
    SecondLevel out;
    out.edges = EdgeSet(n);
    out.low.assign(n, false);
    out.adjacent.resize(n);
    if (k % 2 == 1) {
        out.c2 = c1;
        return out;
    }
    out.c2 = Clustering(n);
    out.c2.depth_bound = c1.depth_bound + 1;
    const std::size_t threshold = cluster_threshold(n_ref, k);

    // every clustered vertex announces c_1
    net.charge_broadcast();
    std::vector<std::pair<Vertex, std::vector<Vertex>>> sets;
    for (Vertex v = 0; v < n; ++v) {
        if (!p.dense[v]) continue;
        auto& adj = out.adjacent[v];
        for (Vertex u : g.neighbors(v))
            if (c1.clustered(u)) adj.push_back(c1.center[u]);
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        if (adj.size() <= threshold) {
            out.low[v] = true;
            for (Vertex s : adj) {
                if (s == c1.center[v]) continue;
                for (Vertex u : g.neighbors(v))
                    if (c1.center[u] == s) {
                        out.edges.insert(v, u);
                        ++out.low_edges;
                        break;
                    }
            }
        } else {
            sets.emplace_back(v, adj);
        }
    }
    std::vector<bool> in_z2(n, false);
    if (!sets.empty()) {
        HittingSetInstance inst = make_hitting_instance(std::move(sets), n_ref);
        HitOutcome hit = compute_hitting_set(inst, opt.backend, opt.profile, opt.seed ^ 0x5a32ULL, opt.c);
        net.charge_plain(hit.rounds);
        net.charge_broadcast();
        if (!hit.all_hit) throw HittingFailure("second-level hitting set misses a cluster neighborhood");
        out.z2 = hit.z;
        out.patched = hit.patched;
        for (Vertex s : out.z2) in_z2[s] = true;
    }
    auto& c2 = out.c2;
    for (Vertex v = 0; v < n; ++v)
        if (c1.clustered(v) && in_z2[c1.center[v]]) {
            c2.center[v] = c1.center[v];
            c2.parent[v] = c1.parent[v];
        }
    for (Vertex v = 0; v < n; ++v) {
        if (!p.dense[v] || out.low[v] || c2.clustered(v)) continue;
        Vertex s = kNoVertex;
        for (Vertex a : out.adjacent[v])
            if (in_z2[a]) {
                s = a;
                break;
            }
        if (s == kNoVertex) throw HittingFailure("dense vertex " + std::to_string(v) + " has no center in Z_2");
        for (Vertex u : g.neighbors(v))
            if (c1.center[u] == s) {
                c2.center[v] = s;
                c2.parent[v] = u;
                out.edges.insert(v, u);
                ++out.join_edges;
                break;
            }
    }
    // C_2 membership announcement
    net.charge_broadcast();
    return out;
}

EdgeSet connect_clusters(const Graph& g, const Clustering& c1, const Clustering& c2, Network& net) {
    const std::size_t n = g.n();
    EdgeSet out(n);
    std::vector<Message> proposals;
    for (Vertex x = 0; x < n; ++x) {
        if (!c1.clustered(x)) continue;
        std::map<Vertex, Vertex> best;
        for (Vertex y : g.neighbors(x)) {
            Vertex b = c2.center[y];
            if (b == kNoVertex || b == c1.center[x]) continue;
            best.emplace(b, y);  // neighbors ascend, so the first is the min
        }
        for (const auto& [b, y] : best) proposals.push_back({x, b, {Edge(x, y).key()}});
    }
    Inboxes at_centers = net.route_batched(std::move(proposals));
    std::vector<Message> notes;
    for (Vertex b = 0; b < n; ++b) {
        std::map<Vertex, std::uint64_t> pick;
        for (const auto& m : at_centers[b]) {
            Vertex a = c1.center[m.src];
            auto it = pick.find(a);
            if (it == pick.end() || m.payload[0] < it->second) pick[a] = m.payload[0];
        }
        for (const auto& [a, key] : pick) {
            Edge e = Edge::from_key(key);
            Vertex end = c1.center[e.u] == a ? e.u : e.v;
            notes.push_back({b, end, {key}});
        }
    }
    Inboxes at_ends = net.route_batched(std::move(notes));
    for (Vertex x = 0; x < n; ++x)
        for (const auto& m : at_ends[x]) out.insert(Edge::from_key(m.payload[0]));
    return out;
}

DenseResult cons_spanner_dense(const Graph& g, const Partition& p, unsigned k, const NNResult& nn,
                               Network& net, const DenseOptions& opt) {
    if (k < 6) throw UnsupportedK("the dense-region construction needs k >= 6");
    DenseResult res;
    res.first = build_first_clustering(g, p, k, nn, net, opt);
    res.second = build_second_level(g, p, res.first.c1, k, net, opt);
    EdgeSet pairs = connect_clusters(g, res.first.c1, res.second.c2, net);
    res.pair_edges = pairs.size();
    res.h_dense = EdgeSet(g.n());
    res.h_dense.insert_all(res.first.edges);
    res.h_dense.insert_all(res.second.edges);
    res.h_dense.insert_all(pairs);
    return res;
}

}  // namespace spanner
