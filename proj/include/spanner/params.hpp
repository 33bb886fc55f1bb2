#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spanner {

inline constexpr double kEps = 1e-9;

// n^(1/2 - 1/k), the real-valued density threshold.
double density_threshold(std::size_t n, unsigned k);
// ceil(n^(1/2 - 1/k)).
std::size_t capacity(std::size_t n, unsigned k);
// Smallest integer strictly above n^(1/2 - 1/k).
std::size_t internal_capacity(std::size_t n, unsigned k);
// ceil(n^(1/k)).
std::size_t sigma(std::size_t n, unsigned k);
// ceil(n^(1/k) * ln n), the cluster-adjacency threshold.
std::size_t cluster_threshold(std::size_t n, unsigned k);

// k/2 - 1 for even k, floor(k/2) for odd k.
std::uint32_t radius_for(unsigned k);

inline bool is_heavy(std::size_t degree, std::size_t n) { return degree * degree >= n; }

struct GammaSchedule {
    unsigned k = 0;
    std::vector<std::uint32_t> values;
};

// gamma(1) = 2, gamma(i+1) = min(2 gamma(i) - 1, floor(k/2)). Throws UnsupportedK for k < 6.
GammaSchedule gamma_schedule(unsigned k);

}  // namespace spanner
