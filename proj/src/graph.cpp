#include "spanner/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spanner/errors.hpp"
#include "spanner/rng.hpp"

namespace spanner {

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) throw InputError("edge endpoint out of range");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        g.adj_[e.u].push_back(e.v);
        g.adj_[e.v].push_back(e.u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto& a = g.adj_[v];
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw InputError("duplicate edge at vertex " + std::to_string(v));
    }
    g.m_ = edges.size();
    return g;
}

Graph Graph::from_edges_dedup(std::size_t n, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return from_edges(n, edges);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (a >= n() || b >= n()) return false;
    const auto& s = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    Vertex t = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(s.begin(), s.end(), t);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<bool>& keep) const {
    Graph g(n());
    std::size_t twice = 0;
    for (Vertex u = 0; u < n(); ++u) {
        if (!keep[u]) continue;
        for (Vertex v : adj_[u])
            if (keep[v]) g.adj_[u].push_back(v);
        twice += g.adj_[u].size();
    }
    g.m_ = twice / 2;
    return g;
}

void EdgeSet::insert(Edge e) {
    if (e.u >= n_ || e.v >= n_) throw InputError("spanner edge endpoint out of range");
    keys_.insert(e.key());
}

void EdgeSet::insert_all(const EdgeSet& other) {
    for (auto k : other.keys_) insert(Edge::from_key(k));
}

std::vector<Edge> EdgeSet::sorted() const {
    std::vector<Edge> out;
    out.reserve(keys_.size());
    for (auto k : keys_) out.push_back(Edge::from_key(k));
    std::sort(out.begin(), out.end());
    return out;
}

Graph EdgeSet::as_graph() const { return Graph::from_edges(n_, sorted()); }

const TreeMember* TruncatedBfsTree::find(Vertex v) const {
    for (const auto& m : members)
        if (m.vertex == v) return &m;
    return nullptr;
}

bool TruncatedBfsTree::contains(Vertex v) const { return find(v) != nullptr; }

TruncatedBfsTree bfs_truncated(const Graph& g, Vertex root, std::uint32_t max_dist,
                               std::size_t max_count, const VertexFilter& allowed) {
    if (root >= g.n()) throw InputError("bfs root out of range");
    if (max_count < 1) throw InputError("bfs max_count must be at least 1");
    if (allowed && !allowed(root)) throw InputError("bfs root rejected by predicate");

    TruncatedBfsTree t;
    t.root = root;
    t.radius = max_dist;
    t.capacity = max_count;
    t.members.push_back({root, 0, kNoVertex});

    std::unordered_set<Vertex> seen{root};
    std::vector<Vertex> layer{root};
    for (std::uint32_t d = 1; d <= max_dist && t.members.size() < max_count; ++d) {
        // layer is sorted, so the first discoverer is the smallest-ID parent
        std::vector<std::pair<Vertex, Vertex>> found;
        for (Vertex x : layer)
            for (Vertex w : g.neighbors(x)) {
                if (allowed && !allowed(w)) continue;
                if (seen.insert(w).second) found.emplace_back(w, x);
            }
        if (found.empty()) break;
        std::sort(found.begin(), found.end());
        layer.clear();
        for (auto [w, p] : found) {
            if (t.members.size() >= max_count) break;
            t.members.push_back({w, d, p});
            layer.push_back(w);
        }
    }
    return t;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::uint32_t> dist(g.n(), kInf);
    std::vector<Vertex> queue{source};
    dist[source] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        Vertex x = queue[h];
        for (Vertex w : g.neighbors(x))
            if (dist[w] == kInf) {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::size_t oracle_limit() {
    if (const char* env = std::getenv("SPANNER_ORACLE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 5000;
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g) {
    return all_pairs_distances(g, oracle_limit());
}

std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g, std::size_t limit) {
    if (g.n() > limit)
        throw ResourceError("all_pairs_distances: n=" + std::to_string(g.n()) +
                            " exceeds oracle limit " + std::to_string(limit));
    std::vector<std::vector<std::uint32_t>> d;
    d.reserve(g.n());
    for (Vertex s = 0; s < g.n(); ++s) d.push_back(bfs_distances(g, s));
    return d;
}

namespace {

struct ModelName {
    GraphModel model;
    const char* name;
    std::size_t arity;
};

constexpr ModelName kModels[] = {
    {GraphModel::Gnp, "gnp", 2},         {GraphModel::Path, "path", 1},
    {GraphModel::Cycle, "cycle", 1},     {GraphModel::Star, "star", 1},
    {GraphModel::Grid, "grid", 2},       {GraphModel::Barbell, "barbell", 2},
    {GraphModel::Complete, "complete", 1}, {GraphModel::Bipartite, "bipartite", 3},
};

const ModelName& model_info(GraphModel m) {
    for (const auto& x : kModels)
        if (x.model == m) return x;
    throw InputError("unknown graph model");
}

std::size_t as_count(double x, const char* what) {
    if (!(x >= 0) || x != std::floor(x) || x > 1e7)
        throw InputError(std::string("invalid ") + what);
    return static_cast<std::size_t>(x);
}

double as_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0,1]");
    return p;
}

}  // namespace

GenSpec GenSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw InputError("empty generator spec");
    GenSpec spec;
    bool known = false;
    for (const auto& x : kModels)
        if (parts[0] == x.name) {
            spec.model = x.model;
            known = true;
            if (parts.size() != x.arity + 1)
                throw InputError("generator '" + parts[0] + "' expects " +
                                 std::to_string(x.arity) + " parameters");
        }
    if (!known) throw InputError("unknown generator '" + parts[0] + "'");
    for (std::size_t i = 1; i < parts.size(); ++i) {
        try {
            std::size_t used = 0;
            spec.params.push_back(std::stod(parts[i], &used));
            if (used != parts[i].size()) throw InputError("trailing characters");
        } catch (const std::exception&) {
            throw InputError("bad generator parameter '" + parts[i] + "'");
        }
    }
    return spec;
}

std::string GenSpec::str() const {
    std::ostringstream os;
    os << model_info(model).name;
    for (double p : params) os << ':' << p;
    return os.str();
}

Graph generate(const GenSpec& spec, std::uint64_t seed) { return generate(spec.model, spec.params, seed); }

Graph generate(GraphModel model, const std::vector<double>& params, std::uint64_t seed) {
    if (params.size() != model_info(model).arity)
        throw InputError("wrong parameter count for generator");
    std::vector<Edge> edges;
    std::size_t n = 0;
    switch (model) {
        case GraphModel::Gnp: {
            n = as_count(params[0], "vertex count");
            double p = as_prob(params[1]);
            CounterRng rng = CounterRng(seed).split(0x676e70);
            std::uint64_t idx = 0;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v, ++idx)
                    if (rng.bernoulli(idx, p)) edges.emplace_back(u, v);
            break;
        }
        case GraphModel::Path:
            n = as_count(params[0], "vertex count");
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
            break;
        case GraphModel::Cycle:
            n = as_count(params[0], "vertex count");
            if (n < 3) throw InputError("cycle needs at least 3 vertices");
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
            edges.emplace_back(0, static_cast<Vertex>(n - 1));
            break;
        case GraphModel::Star:
            n = as_count(params[0], "vertex count");
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        case GraphModel::Grid: {
            std::size_t r = as_count(params[0], "row count"), c = as_count(params[1], "column count");
            n = r * c;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    auto id = static_cast<Vertex>(i * c + j);
                    if (j + 1 < c) edges.emplace_back(id, id + 1);
                    if (i + 1 < r) edges.emplace_back(id, static_cast<Vertex>(id + c));
                }
            break;
        }
        case GraphModel::Barbell: {
            // two cliques of size q joined by a path with `len` inner vertices
            std::size_t q = as_count(params[0], "clique size"), len = as_count(params[1], "path length");
            if (q < 1) throw InputError("barbell clique size must be positive");
            n = 2 * q + len;
            auto clique = [&](Vertex base) {
                for (Vertex a = 0; a < q; ++a)
                    for (Vertex b = a + 1; b < q; ++b) edges.emplace_back(base + a, base + b);
            };
            clique(0);
            clique(static_cast<Vertex>(q + len));
            Vertex prev = static_cast<Vertex>(q - 1);
            for (std::size_t i = 0; i < len; ++i) {
                auto cur = static_cast<Vertex>(q + i);
                edges.emplace_back(prev, cur);
                prev = cur;
            }
            edges.emplace_back(prev, static_cast<Vertex>(q + len));
            break;
        }
        case GraphModel::Complete:
            n = as_count(params[0], "vertex count");
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            break;
        case GraphModel::Bipartite: {
            std::size_t a = as_count(params[0], "left size"), b = as_count(params[1], "right size");
            double p = as_prob(params[2]);
            n = a + b;
            CounterRng rng = CounterRng(seed).split(0x626970);
            std::uint64_t idx = 0;
            for (Vertex u = 0; u < a; ++u)
                for (std::size_t j = 0; j < b; ++j, ++idx)
                    if (rng.bernoulli(idx, p)) edges.emplace_back(u, static_cast<Vertex>(a + j));
            break;
        }
    }
    return Graph::from_edges(n, edges);
}

namespace {

bool parse_uint(const std::string& tok, std::uint64_t& out) {
    if (tok.empty() || tok.size() > 12) return false;
    out = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return true;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

}  // namespace

Graph read_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::uint64_t n = 0, m = 0;
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokens(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() != 2) throw ParseError(lineno, "expected two integers");
        std::uint64_t a = 0, b = 0;
        if (!parse_uint(toks[0], a) || !parse_uint(toks[1], b))
            throw ParseError(lineno, "expected non-negative integers");
        if (!have_header) {
            if (a > 100000000ULL) throw ParseError(lineno, "vertex count too large");
            n = a;
            m = b;
            have_header = true;
            continue;
        }
        if (a >= n || b >= n) throw ParseError(lineno, "vertex ID out of range");
        if (a == b) throw ParseError(lineno, "self-loop");
        Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
        if (!seen.insert(e.key()).second) throw ParseError(lineno, "duplicate edge");
        edges.push_back(e);
    }
    if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'n m' header");
    if (edges.size() != m)
        throw ParseError(lineno, "header announces " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges.size()));
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
    return os.str();
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_edge_list(ss.str());
}

}  // namespace spanner
