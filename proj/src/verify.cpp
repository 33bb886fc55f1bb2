#include "spanner/verify.hpp"

#include <algorithm>
#include <unordered_map>

#include "spanner/errors.hpp"

namespace spanner {

StretchAudit audit_stretch(const Graph& g, const EdgeSet& h, double bound) {
    for (const Edge& e : h.sorted())
        if (e.v >= g.n() || !g.has_edge(e.u, e.v))
            throw InputError("spanner edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in G");
    if (g.n() > oracle_limit()) throw ResourceError("graph above the oracle limit for stretch audits");
    StretchAudit a;
    a.bound = bound;
    const auto edges = g.edges();
    a.stretch.assign(edges.size(), 1);
    Graph hg = h.as_graph();
    // group missing edges by their lower endpoint
    std::unordered_map<Vertex, std::vector<std::size_t>> by_source;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!h.contains(edges[i])) by_source[edges[i].u].push_back(i);
    std::vector<Vertex> sources;
    for (const auto& [s, list] : by_source) sources.push_back(s);
    std::sort(sources.begin(), sources.end());
    for (Vertex s : sources) {
        auto dist = bfs_distances(hg, s);
        for (std::size_t i : by_source[s]) a.stretch[i] = dist[edges[i].v];
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        a.histogram[a.stretch[i]] += 1;
        if (i == 0 || a.stretch[i] > a.max) {
            a.max = a.stretch[i];
            a.argmax = edges[i];
        }
    }
    a.pass = static_cast<double>(a.max) <= bound;
    return a;
}

ClusterAudit audit_clustering(const Graph& g, const Clustering& c, const EdgeSet& h, std::uint32_t expected_depth) {
    ClusterAudit a;
    auto fail = [&](const std::string& msg) {
        if (a.pass) {
            a.pass = false;
            a.message = msg;
        }
    };
    const std::size_t n = g.n();
    if (c.center.size() != n || c.parent.size() != n) {
        fail("clustering size does not match the graph");
        return a;
    }
    for (Vertex v = 0; v < n; ++v) {
        Vertex s = c.center[v];
        if (s == kNoVertex) continue;
        if (s >= n || c.center[s] != s) {
            fail("center " + std::to_string(s) + " of vertex " + std::to_string(v) + " is not in its own cluster");
            continue;
        }
        std::uint32_t depth = 0;
        Vertex cur = v;
        while (cur != s) {
            Vertex par = c.parent[cur];
            if (par == kNoVertex) {
                fail("vertex " + std::to_string(cur) + " has no parent toward center " + std::to_string(s));
                break;
            }
            if (c.center[par] != s) {
                fail("tree edge (" + std::to_string(cur) + "," + std::to_string(par) + ") leaves the cluster");
                break;
            }
            if (!g.has_edge(cur, par)) {
                fail("tree edge (" + std::to_string(cur) + "," + std::to_string(par) + ") is not in G");
                break;
            }
            if (!h.contains(cur, par)) {
                fail("tree edge (" + std::to_string(cur) + "," + std::to_string(par) + ") is missing from the spanner");
                break;
            }
            cur = par;
            if (++depth > n) {
                fail("parent cycle at vertex " + std::to_string(v));
                break;
            }
        }
        a.max_depth = std::max(a.max_depth, depth);
    }
    if (a.max_depth > expected_depth)
        fail("cluster depth " + std::to_string(a.max_depth) + " exceeds " + std::to_string(expected_depth));
    return a;
}

std::uint32_t cluster_depth_in(const Graph& h, const std::vector<Vertex>& members, Vertex root) {
    std::unordered_map<Vertex, std::uint32_t> dist;
    for (Vertex v : members) dist[v] = kInf;
    auto it = dist.find(root);
    if (it == dist.end()) return kInf;
    it->second = 0;
    std::vector<Vertex> frontier{root};
    std::uint32_t d = 0;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        ++d;
        std::vector<Vertex> next;
        for (Vertex x : frontier)
            for (Vertex y : h.neighbors(x)) {
                auto jt = dist.find(y);
                if (jt != dist.end() && jt->second == kInf) {
                    jt->second = d;
                    next.push_back(y);
                    ++reached;
                }
            }
        frontier.swap(next);
    }
    if (reached != dist.size()) return kInf;
    std::uint32_t depth = 0;
    for (const auto& [v, dv] : dist) depth = std::max(depth, dv);
    return depth;
}

}  // namespace spanner
