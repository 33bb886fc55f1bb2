#include "spanner/nearest.hpp"

#include <algorithm>
#include <unordered_map>

#include "spanner/errors.hpp"

namespace spanner {

namespace {

constexpr Word kField = (Word{1} << 28) - 1;

bool by_dist_id(const TreeMember& a, const TreeMember& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.vertex < b.vertex;
}

struct Candidate {
    std::uint32_t dist;
    Vertex parent;
};

}  // namespace

Word pack_member(const TreeMember& m) {
    Word parent = m.parent == kNoVertex ? kField : Word{m.parent};
    return (Word{m.vertex} & kField) | ((parent & kField) << 28) | (Word{m.dist & 0xff} << 56);
}

TreeMember unpack_member(Word w) {
    TreeMember m;
    m.vertex = static_cast<Vertex>(w & kField);
    Word parent = (w >> 28) & kField;
    m.parent = parent == kField ? kNoVertex : static_cast<Vertex>(parent);
    m.dist = static_cast<std::uint32_t>(w >> 56);
    return m;
}

NNResult nearest_neighbors(const Graph& g, unsigned k) {
    Network net(g.n());
    return nearest_neighbors(g, k, net);
}

NNResult nearest_neighbors(const Graph& g, unsigned k, Network& net, const NNOptions& opt) {
    GammaSchedule sched = gamma_schedule(k);
    const std::size_t n = g.n();
    if (net.n() != n) throw InputError("network size does not match the graph");
    if (n >= kField) throw ResourceError("graph too large for the tree word encoding");

    NNResult res;
    res.n = n;
    res.k = k;
    res.n_ref = opt.n_ref ? opt.n_ref : n;
    if (res.n_ref < 2) res.n_ref = 2;
    res.radius = radius_for(k);
    res.cap = capacity(res.n_ref, k);
    res.internal_cap = internal_capacity(res.n_ref, k);
    res.heavy.assign(n, false);
    res.exceeds.assign(n, false);
    res.trees.resize(n);
    const std::size_t c = res.internal_cap;

    // Phase 1: heavy flags to neighbors, then light neighbor lists.
    std::size_t before = net.ledger().total();
    for (Vertex v = 0; v < n; ++v) res.heavy[v] = is_heavy(g.degree(v), res.n_ref);
    std::vector<Message> flags;
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v)) flags.push_back({v, u, {res.heavy[v] ? Word{1} : Word{0}}});
    Inboxes flag_in = net.plain_round(std::move(flags));

    std::vector<std::vector<Vertex>> light_adj(n);
    for (Vertex v = 0; v < n; ++v)
        for (const auto& m : flag_in[v])
            if (m.payload[0] == 0) light_adj[v].push_back(m.src);

    std::vector<Message> lists;
    for (Vertex u = 0; u < n; ++u) {
        if (res.heavy[u]) continue;
        std::vector<Word> payload(light_adj[u].begin(), light_adj[u].end());
        for (Vertex v : light_adj[u]) lists.push_back({u, v, payload});
    }
    Inboxes list_in = net.deliver(std::move(lists));

    for (Vertex u = 0; u < n; ++u) {
        auto& t = res.trees[u];
        t.root = u;
        t.radius = 2;
        t.capacity = c;
        t.members.push_back({u, 0, kNoVertex});
        if (res.heavy[u]) continue;
        std::unordered_map<Vertex, std::size_t> seen;
        seen[u] = 0;
        for (Vertex v : light_adj[u]) {
            seen[v] = t.members.size();
            t.members.push_back({v, 1, u});
        }
        // inbox is ordered by src, so the first discoverer is the min-ID parent
        for (const auto& m : list_in[u])
            for (Word w : m.payload) {
                Vertex x = static_cast<Vertex>(w);
                if (seen.emplace(x, t.members.size()).second) t.members.push_back({x, 2, m.src});
            }
        std::sort(t.members.begin(), t.members.end(), by_dist_id);
        if (t.members.size() > c) t.members.resize(c);
    }
    res.rounds_per_phase.push_back(net.ledger().total() - before);
    if (opt.record_phases) {
        res.phase_trees.push_back(res.trees);
        res.phase_radius.push_back(sched.values[0]);
    }

    // Exponentiation phases.
    for (std::size_t i = 1; i < sched.values.size(); ++i) {
        const std::uint32_t target = sched.values[i];
        before = net.ledger().total();
        std::vector<bool> frozen(n, true);
        for (Vertex u = 0; u < n; ++u)
            if (!res.heavy[u]) frozen[u] = res.trees[u].size() >= c;

        std::vector<Message> pings;
        for (Vertex u = 0; u < n; ++u) {
            if (frozen[u]) continue;
            for (const auto& m : res.trees[u].members)
                if (m.vertex != u) pings.push_back({u, m.vertex, {Word{u}}});
        }
        Inboxes ping_in = net.plain_round(std::move(pings));

        std::vector<Message> trees_out;
        for (Vertex v = 0; v < n; ++v) {
            if (res.heavy[v] || ping_in[v].empty()) continue;
            std::vector<Word> payload;
            payload.reserve(res.trees[v].size());
            for (const auto& m : res.trees[v].members) payload.push_back(pack_member(m));
            for (const auto& p : ping_in[v])
                if (res.trees[v].contains(p.src)) trees_out.push_back({v, p.src, payload});
        }
        Inboxes tree_in = net.deliver(std::move(trees_out));

        std::vector<std::size_t> words(n, 0);
        for (Vertex u = 0; u < n; ++u) {
            if (frozen[u]) continue;
            auto& t = res.trees[u];
            std::unordered_map<Vertex, Candidate> best;
            for (const auto& m : t.members) best[m.vertex] = {m.dist, m.parent};
            for (const auto& msg : tree_in[u]) {
                words[u] += msg.word_count();
                const TreeMember* via = t.find(msg.src);
                if (!via) throw ConsistencyError("received a tree from a vertex outside the ball");
                for (Word w : msg.payload) {
                    TreeMember x = unpack_member(w);
                    std::uint32_t d = via->dist + x.dist;
                    if (d > target) continue;
                    Vertex parent = x.vertex == msg.src ? via->parent : x.parent;
                    auto it = best.find(x.vertex);
                    if (it == best.end()) {
                        best.emplace(x.vertex, Candidate{d, parent});
                    } else if (d < it->second.dist ||
                               (d == it->second.dist && parent < it->second.parent)) {
                        it->second = {d, parent};
                    }
                }
            }
            std::vector<TreeMember> merged;
            merged.reserve(best.size());
            for (const auto& [x, cand] : best) merged.push_back({x, cand.dist, cand.parent});
            std::sort(merged.begin(), merged.end(), by_dist_id);
            if (merged.size() > c) merged.resize(c);
            t.members = std::move(merged);
            t.radius = target;
        }
        for (Vertex u = 0; u < n; ++u)
            if (frozen[u] && !res.heavy[u]) res.trees[u].radius = target;
        res.payload_received.push_back(std::move(words));
        res.rounds_per_phase.push_back(net.ledger().total() - before);
        if (opt.record_phases) {
            res.phase_trees.push_back(res.trees);
            res.phase_radius.push_back(target);
        }
    }
    res.phases = sched.values.size();

    for (Vertex u = 0; u < n; ++u) {
        auto& t = res.trees[u];
        std::size_t within = 0;
        while (within < t.members.size() && t.members[within].dist <= res.radius) ++within;
        res.exceeds[u] = !res.heavy[u] && within >= c;
        t.members.resize(std::min(within, res.cap));
        t.radius = res.radius;
        t.capacity = res.cap;
    }
    return res;
}

}  // namespace spanner
