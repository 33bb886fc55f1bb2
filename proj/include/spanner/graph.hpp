#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace spanner {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    std::uint64_t key() const { return (std::uint64_t{u} << 32) | v; }
    static Edge from_key(std::uint64_t k) {
        return Edge(static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffULL));
    }
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    // Throws InputError on self-loops, duplicates or out-of-range IDs.
    static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);
    // Like from_edges but silently drops duplicates.
    static Graph from_edges_dedup(std::size_t n, std::vector<Edge> edges);

    std::size_t n() const { return adj_.size(); }
    std::size_t m() const { return m_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool has_edge(Vertex a, Vertex b) const;
    std::vector<Edge> edges() const;

    // Subgraph with only the vertices accepted by keep; IDs are preserved.
    Graph induced(const std::vector<bool>& keep) const;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
};

class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::size_t n) : n_(n) {}

    std::size_t n() const { return n_; }
    void insert(Edge e);
    void insert(Vertex a, Vertex b) { insert(Edge(a, b)); }
    void insert_all(const EdgeSet& other);
    bool contains(Edge e) const { return keys_.count(e.key()) != 0; }
    bool contains(Vertex a, Vertex b) const { return contains(Edge(a, b)); }
    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }
    std::vector<Edge> sorted() const;
    Graph as_graph() const;

private:
    std::size_t n_ = 0;
    std::unordered_set<std::uint64_t> keys_;
};

struct TreeMember {
    Vertex vertex = 0;
    std::uint32_t dist = 0;
    Vertex parent = kNoVertex;
    friend bool operator==(const TreeMember&, const TreeMember&) = default;
};

struct TruncatedBfsTree {
    Vertex root = 0;
    std::uint32_t radius = 0;
    std::size_t capacity = 0;
    // Sorted by (dist, vertex).
    std::vector<TreeMember> members;

    bool contains(Vertex v) const;
    const TreeMember* find(Vertex v) const;
    std::size_t size() const { return members.size(); }
};

using VertexFilter = std::function<bool(Vertex)>;

TruncatedBfsTree bfs_truncated(const Graph& g, Vertex root, std::uint32_t max_dist,
                               std::size_t max_count, const VertexFilter& allowed = {});

// Single-source hop distances, kInf when unreachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);

std::size_t oracle_limit();
std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g);
std::vector<std::vector<std::uint32_t>> all_pairs_distances(const Graph& g, std::size_t limit);

enum class GraphModel { Gnp, Path, Cycle, Star, Grid, Barbell, Complete, Bipartite };

struct GenSpec {
    GraphModel model = GraphModel::Path;
    std::vector<double> params;

    // "gnp:200:0.1", "path:9", "grid:8:8", "barbell:10:3", ...
    static GenSpec parse(const std::string& text);
    std::string str() const;
};

Graph generate(GraphModel model, const std::vector<double>& params, std::uint64_t seed);
Graph generate(const GenSpec& spec, std::uint64_t seed);

Graph read_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);
Graph load_edge_list_file(const std::string& path);

}  // namespace spanner
