#include "spanner/sparse.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "spanner/errors.hpp"
#include "spanner/params.hpp"

namespace spanner {

namespace {

using Region = std::vector<Vertex>;

bool intersects(const Region& a, const Region& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

void unite(Region& into, const Region& from) {
    Region out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into.swap(out);
}

}  // namespace

LocalSpannerRun local_spanner_run(const Graph& g, std::uint32_t rounds, std::size_t sig) {
    const std::size_t n = g.n();
    LocalSpannerRun run;
    run.edges = EdgeSet(n);
    run.inactive_after.assign(n, 0);
    std::vector<std::vector<Vertex>> W(n);
    std::vector<std::size_t> L(n, 1);
    std::vector<Region> C(n), R(n);
    std::vector<bool> active(n, true);
    for (Vertex u = 0; u < n; ++u) {
        W[u] = g.neighbors(u);
        C[u] = {u};
        R[u] = {u};
    }
    for (std::uint32_t i = 1; i <= rounds; ++i) {
        const std::vector<bool> was_active = active;
        std::vector<Region> next = R;
        for (Vertex u = 0; u < n; ++u) {
            if (!was_active[u]) continue;
            auto& w = W[u];
            w.erase(std::remove_if(w.begin(), w.end(), [&](Vertex x) { return !was_active[x]; }), w.end());
            w.erase(std::remove_if(w.begin(), w.end(), [&](Vertex x) { return intersects(R[u], R[x]); }),
                    w.end());
            while (!w.empty() && L[u] <= i * sig) {
                Vertex pick = w.front();
                const Region& rp = R[pick];
                w.erase(std::remove_if(w.begin(), w.end(), [&](Vertex x) { return intersects(R[x], rp); }),
                        w.end());
                ++L[u];
                unite(C[u], rp);
                run.edges.insert(u, pick);
                run.added.push_back({u, pick, i});
            }
            if (w.empty()) {
                active[u] = false;
                run.inactive_after[u] = i;
            }
            next[u] = C[u];
        }
        R.swap(next);
    }
    return run;
}

EdgeSet local_spanner_global(const Graph& g, unsigned k) {
    if (k < 1) throw InputError("k must be positive");
    return local_spanner_run(g, k, sigma(std::max<std::size_t>(g.n(), 1), k)).edges;
}

Vertex LocalView::local(Vertex global) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), global);
    if (it == vertices.end() || *it != global) return kNoVertex;
    return static_cast<Vertex>(it - vertices.begin());
}

Graph sparse_graph(const Graph& g, const Partition& p) { return Graph::from_edges(g.n(), p.e_sparse.sorted()); }

std::vector<LocalView> build_local_views(const Graph& g, const Partition& p, const NNResult& nn,
                                         Network& net) {
    const std::size_t n = g.n();
    const std::uint32_t r = nn.radius;
    std::vector<LocalView> views(n);

    // A sparse y ships its adjacency to every sparse vertex of its ball.
    std::vector<Message> out;
    for (Vertex y = 0; y < n; ++y) {
        if (p.dense[y] || g.degree(y) == 0) continue;
        std::vector<Word> payload(g.neighbors(y).begin(), g.neighbors(y).end());
        for (const auto& m : nn.trees[y].members)
            if (m.vertex != y && !p.dense[m.vertex]) out.push_back({y, m.vertex, payload});
    }
    Inboxes in = net.route_batched(std::move(out));

    for (Vertex u = 0; u < n; ++u) {
        if (p.dense[u]) continue;
        std::unordered_map<Vertex, std::vector<Vertex>> adj;
        auto add = [&](Vertex a, Vertex b) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        };
        for (Vertex x : g.neighbors(u)) add(u, x);
        for (const auto& msg : in[u])
            for (Word w : msg.payload) add(msg.src, static_cast<Vertex>(w));
        for (auto& [v, list] : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        // BFS to radius r over the collected sparse edges.
        std::unordered_map<Vertex, std::uint32_t> dist{{u, 0}};
        std::vector<Vertex> frontier{u};
        for (std::uint32_t d = 1; d <= r && !frontier.empty(); ++d) {
            std::vector<Vertex> next;
            for (Vertex x : frontier) {
                auto it = adj.find(x);
                if (it == adj.end()) continue;
                for (Vertex y : it->second)
                    if (dist.emplace(y, d).second) next.push_back(y);
            }
            frontier.swap(next);
        }
        LocalView& view = views[u];
        view.owner = u;
        for (const auto& [v, d] : dist) view.vertices.push_back(v);
        std::sort(view.vertices.begin(), view.vertices.end());
        view.dist.resize(view.vertices.size());
        view.sparse.resize(view.vertices.size());
        std::vector<Edge> edges;
        for (Vertex i = 0; i < view.vertices.size(); ++i) {
            Vertex v = view.vertices[i];
            view.dist[i] = dist[v];
            view.sparse[i] = !p.dense[v];
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (Vertex y : it->second) {
                if (y <= v) continue;
                Vertex j = view.local(y);
                if (j != kNoVertex) edges.push_back(Edge(i, j));
            }
        }
        view.subgraph = Graph::from_edges(view.vertices.size(), edges);
    }
    return views;
}

SparseResult cons_spanner_sparse(const Graph& g, const Partition& p, unsigned k,
                                 const std::vector<LocalView>& views, Network& net, std::size_t n_ref) {
    const std::size_t n = g.n();
    if (views.size() != n) throw InputError("one view slot per vertex expected");
    const std::uint32_t r = radius_for(k);
    const std::size_t sig = sigma(n_ref ? n_ref : std::max<std::size_t>(n, 1), k);
    SparseResult res;
    res.h_sparse = EdgeSet(n);
    res.local_edges.resize(n);

    std::vector<Message> notes;
    for (Vertex u = 0; u < n; ++u) {
        if (p.dense[u]) continue;
        const LocalView& view = views[u];
        if (view.empty()) throw InputError("missing local view for sparse vertex " + std::to_string(u));
        LocalSpannerRun run = local_spanner_run(view.subgraph, r, sig);
        Vertex self = view.local(u);
        std::uint32_t done = run.inactive_after[self];
        if (done == 0)
            throw ConsistencyError("sparse vertex " + std::to_string(u) + " still active after " +
                                   std::to_string(r) + " simulated rounds");
        res.max_inactive_round = std::max(res.max_inactive_round, done);
        auto& mine = res.local_edges[u];
        for (const auto& d : run.added)
            if (d.round + view.dist[d.by] <= r) mine.push_back(Edge(view.vertices[d.by], view.vertices[d.to]));
        std::sort(mine.begin(), mine.end());
        mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
        for (const Edge& e : mine) {
            res.h_sparse.insert(e);
            for (Vertex end : {e.u, e.v})
                if (end != u && !p.dense[end]) notes.push_back({u, end, {e.key()}});
        }
    }
    net.route_batched(std::move(notes));
    return res;
}

}  // namespace spanner
