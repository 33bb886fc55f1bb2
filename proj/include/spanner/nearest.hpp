#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spanner/clique.hpp"
#include "spanner/graph.hpp"
#include "spanner/params.hpp"

namespace spanner {

struct NNOptions {
    // n used for thresholds; 0 means graph.n().
    std::size_t n_ref = 0;
    // Keep the partial trees after every phase (for invariant checks).
    bool record_phases = false;
};

struct NNResult {
    std::size_t n = 0;
    unsigned k = 0;
    std::size_t n_ref = 0;
    std::uint32_t radius = 0;
    std::size_t cap = 0;
    std::size_t internal_cap = 0;
    std::vector<bool> heavy;
    // trees[v] is meaningful only for non-heavy v.
    std::vector<TruncatedBfsTree> trees;
    // |Gamma_radius(v, G_light)| > n^(1/2-1/k)
    std::vector<bool> exceeds;
    // Number of phases, the Gamma_2 collection included.
    std::size_t phases = 0;
    std::vector<std::size_t> rounds_per_phase;
    // Phase i partial trees, untruncated to radius, with internal capacity.
    std::vector<std::vector<TruncatedBfsTree>> phase_trees;
    std::vector<std::uint32_t> phase_radius;
    // Tree payload words received per vertex per exponentiation phase.
    std::vector<std::vector<std::size_t>> payload_received;

    bool light(Vertex v) const { return !heavy[v]; }
};

// Truncated BFS trees of every non-heavy vertex in G_light, computed by
// graph exponentiation on the simulated clique.
NNResult nearest_neighbors(const Graph& g, unsigned k, Network& net, const NNOptions& opt = {});
NNResult nearest_neighbors(const Graph& g, unsigned k);

// Packs (vertex, distance, parent) in one word.
Word pack_member(const TreeMember& m);
TreeMember unpack_member(Word w);

}  // namespace spanner
