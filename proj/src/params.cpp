#include "spanner/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spanner/errors.hpp"

namespace spanner {

double density_threshold(std::size_t n, unsigned k) {
    if (n < 2 || k < 2) throw InputError("density threshold needs n >= 2 and k >= 2");
    return std::pow(static_cast<double>(n), 0.5 - 1.0 / k);
}

std::size_t capacity(std::size_t n, unsigned k) {
    double t = density_threshold(n, k);
    return static_cast<std::size_t>(std::ceil(t - kEps));
}

std::size_t internal_capacity(std::size_t n, unsigned k) {
    double t = density_threshold(n, k);
    return static_cast<std::size_t>(std::floor(t + kEps)) + 1;
}

std::size_t sigma(std::size_t n, unsigned k) {
    if (n < 1 || k < 1) throw InputError("sigma needs n >= 1 and k >= 1");
    return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 / k) - kEps));
}

std::size_t cluster_threshold(std::size_t n, unsigned k) {
    if (n < 2 || k < 1) throw InputError("cluster threshold needs n >= 2 and k >= 1");
    double v = std::pow(static_cast<double>(n), 1.0 / k) * std::log(static_cast<double>(n));
    return static_cast<std::size_t>(std::ceil(v - kEps));
}

std::uint32_t radius_for(unsigned k) { return k % 2 == 0 ? k / 2 - 1 : k / 2; }

GammaSchedule gamma_schedule(unsigned k) {
    if (k < 6) throw UnsupportedK("k = " + std::to_string(k) + " needs the small-k algorithm (k >= 6 required)");
    GammaSchedule s;
    s.k = k;
    std::uint32_t half = k / 2;
    std::uint32_t g = 2;
    s.values.push_back(g);
    while (g < half) {
        g = std::min(2 * g - 1, half);
        s.values.push_back(g);
    }
    return s;
}

}  // namespace spanner
