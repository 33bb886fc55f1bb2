#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spanner/clique.hpp"
#include "spanner/graph.hpp"
#include "spanner/hitting.hpp"

namespace spanner {

enum class Algorithm { Randomized, Deterministic, Ok, BaswanaSen, SmallK };

// "randomized", "deterministic", "ok", "baswana-sen", "small-k". Throws InputError.
Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

// Envelope on max-stretch / k declared for the contraction algorithm.
inline constexpr double kOkAlpha = 30.0;

struct SuiteOptions {
    std::uint64_t seed = 0;
    // Used by small-k and, when set explicitly, by ok.
    HitBackend backend = HitBackend::Derand;
    bool backend_set = false;
    std::size_t routing_cost = 1;
    // Stretch audit after the run (skipped above the oracle limit).
    bool audit = true;
    std::ostream* transcript = nullptr;
};

struct OkPhase {
    unsigned k_prime = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t dense = 0;
    std::size_t clusters = 0;
};

struct SpannerReport {
    std::string algorithm;
    std::string backend;
    unsigned k = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t edges = 0;
    // -1 when no audit ran; kInf-valued when H disconnects an edge.
    double max_stretch = -1;
    double stretch_bound = 0;
    bool audited = false;
    std::size_t rounds = 0;  // plain + routing
    std::size_t routing_rounds = 0;
    std::size_t violations = 0;
    std::size_t max_routing_words = 0;
    std::uint64_t seed = 0;
    bool success = false;
    std::string failure;

    std::size_t nn_phases = 0;
    std::size_t sparse_edges = 0;
    std::size_t dense_edges = 0;
    std::size_t patched = 0;
    std::uint32_t max_inactive_round = 0;

    // contraction only
    std::vector<OkPhase> phases;
    bool depth_audit = true;
    std::string depth_failure;

    double alpha() const { return k ? max_stretch / k : 0; }
    // |H| / (k n^(1+1/k))
    double size_ratio() const;
    // |H| / (k n^(1+1/k) ln^2 n)
    double size_ratio_log() const;

    std::string to_json() const;
    std::string csv_row() const;
    static std::string csv_header();
};

struct SpannerRun {
    EdgeSet h;
    SpannerReport report;
    RoundLedger ledger;
};

// k >= 6; k < 6 raises UnsupportedK.
SpannerRun randomized_spanner(const Graph& g, unsigned k, std::uint64_t seed, const SuiteOptions& opt = {});
SpannerRun deterministic_spanner(const Graph& g, unsigned k, const SuiteOptions& opt = {});
SpannerRun ok_spanner(const Graph& g, unsigned k, const SuiteOptions& opt = {});
SpannerRun baswana_sen(const Graph& g, unsigned k, std::uint64_t seed, const SuiteOptions& opt = {});
SpannerRun small_k_spanner(const Graph& g, unsigned k, HitBackend backend, const SuiteOptions& opt = {});

SpannerRun run_algorithm(Algorithm a, const Graph& g, unsigned k, const SuiteOptions& opt);

}  // namespace spanner
