#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spanner/gf2.hpp"
#include "spanner/graph.hpp"

namespace spanner {

struct HittingSetInstance {
    // Sorted, distinct.
    std::vector<Vertex> universe;
    // (owner, S_owner); every S is sorted and inside the universe.
    std::vector<std::pair<Vertex, std::vector<Vertex>>> sets;
    std::size_t delta = 1;
    // n for the log n factors; 0 means |universe|.
    std::size_t n = 0;

    std::size_t n_eff() const;
    // Sorts, dedups and checks the invariants. Throws InputError.
    void normalize();
    // Position of x inside the universe, kNoVertex if absent.
    Vertex index_of(Vertex x) const;

    static HittingSetInstance from_json(const std::string& text);
    std::string to_json() const;
};

using SeedBits = std::vector<std::uint8_t>;

// h'(x) = low beta bits of sum_j a_j x^j over GF(2^width), width = max(gamma, beta).
// Seed bit i is bit (i mod width) of a_(i div width).
class DWiseFamily {
public:
    DWiseFamily(unsigned gamma, unsigned beta, unsigned d);
    // gamma = ceil(log2 universe_size), at least 1.
    static DWiseFamily for_universe(std::size_t universe_size, unsigned beta, unsigned d);

    unsigned gamma() const { return gamma_; }
    unsigned beta() const { return beta_; }
    unsigned d() const { return d_; }
    unsigned width() const { return width_; }
    std::size_t seed_bits() const { return std::size_t{d_} * width_; }
    const GF2Field& field() const { return field_; }

    std::vector<std::uint64_t> coefficients(const SeedBits& seed) const;
    std::uint64_t eval(const SeedBits& seed, std::uint64_t x) const;
    // Contribution of seed bit `bit` (set to 1) to h'(x).
    std::uint64_t column(std::size_t bit, std::uint64_t x) const;
    std::vector<std::uint64_t> columns(std::uint64_t x) const;

private:
    unsigned gamma_, beta_, d_, width_;
    GF2Field field_;
};

enum class BetaProfile { Log, Sqrt };

// Log: floor(log2(delta / (c ln n))) clamped >= 0.
// Sqrt: floor(log2(sqrt(delta) / n^(1/16))) clamped >= 1.
unsigned beta_for(BetaProfile profile, std::size_t delta, std::size_t n, double c = 2.0);

std::vector<Vertex> randomized_hitting_set(const HittingSetInstance& inst, double c, std::uint64_t seed);

struct DWiseDraw {
    SeedBits seed;
    std::vector<Vertex> z;
    unsigned beta = 0;
    bool beta_clamped = false;
};

DWiseDraw dwise_hitting_draw(const HittingSetInstance& inst, unsigned d, std::uint64_t rng_seed);
// Z for a given family and seed; elements are universe positions mapped back to IDs.
std::vector<Vertex> hitting_set_from_seed(const HittingSetInstance& inst, const DWiseFamily& fam,
                                          const SeedBits& seed);

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;

// Exact Pr[no x in s has h'(x) = 0 | prefix]. s holds universe positions.
double conditional_failure_probability(const DWiseFamily& fam, const SeedBits& prefix,
                                       const std::vector<std::uint64_t>& s,
                                       std::uint64_t limit = kEnumerationLimit);
// Exact Pr[|Z| > threshold | prefix] over universe positions [0, universe_size).
double size_term(const DWiseFamily& fam, const SeedBits& prefix, std::size_t universe_size,
                 std::size_t threshold, std::uint64_t limit = kEnumerationLimit);

struct DerandParams {
    unsigned d = 8;
    BetaProfile profile = BetaProfile::Sqrt;
    // 0 picks the profile value.
    int beta = -1;
    // 0 means ceil(2 E|Z|).
    std::size_t size_threshold = 0;
    // 0 means floor(log2 n).
    unsigned chunk_bits = 0;
    double c = 2.0;
    // Keep going when the initial estimate is >= 1 and patch unhit sets.
    bool best_effort = false;
    unsigned threads = 0;
};

struct DerandResult {
    SeedBits seed;
    std::vector<Vertex> z;
    unsigned beta = 0;
    unsigned gamma = 0;
    unsigned chunk_bits = 0;
    std::size_t seed_bits = 0;
    std::size_t size_threshold = 0;
    std::size_t rounds = 0;
    // Estimator before the first and after every chunk.
    std::vector<double> psi;
    double size_part0 = 0;
    double miss_part0 = 0;
    bool all_hit = false;
    std::size_t patched = 0;
};

// Conditional expectations over seed chunks. Throws ParameterError when the
// initial estimator is >= 1 (unless best_effort).
DerandResult derandomized_hitting_set(const HittingSetInstance& inst, const DerandParams& params = {});

struct HittingAudit {
    bool pass = false;
    std::size_t z_size = 0;
    std::size_t unhit = 0;
    Vertex first_unhit_owner = kNoVertex;
};

HittingAudit audit_hitting(const HittingSetInstance& inst, const std::vector<Vertex>& z);

enum class HitBackend { Random, DWise, Derand };

HitBackend parse_backend(const std::string& name);
std::string backend_name(HitBackend b);

struct HitOutcome {
    std::vector<Vertex> z;
    bool all_hit = false;
    std::size_t rounds = 0;
    std::size_t patched = 0;
    unsigned beta = 0;
};

// Entry point used by the spanner constructions.
HitOutcome compute_hitting_set(const HittingSetInstance& inst, HitBackend backend, BetaProfile profile,
                               std::uint64_t seed, double c = 2.0);

}  // namespace spanner
