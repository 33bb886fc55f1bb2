#include <cmath>

#include "doctest.h"
#include "spanner/errors.hpp"
#include "spanner/params.hpp"

using namespace spanner;

namespace {

std::size_t closed_form_phases(unsigned k) {
    std::size_t i = 1;
    while ((std::size_t{1} << (i - 1)) + 1 < k / 2) ++i;
    return i;
}

}  // namespace

TEST_CASE("radius") {
    CHECK(radius_for(6) == 2);
    CHECK(radius_for(8) == 3);
    CHECK(radius_for(7) == 3);
    CHECK(radius_for(9) == 4);
}

TEST_CASE("gamma schedule") {
    CHECK(gamma_schedule(6).values == std::vector<std::uint32_t>{2, 3});
    CHECK(gamma_schedule(16).values == std::vector<std::uint32_t>{2, 3, 5, 8});
    CHECK(gamma_schedule(32).values == std::vector<std::uint32_t>{2, 3, 5, 9, 16});
    for (unsigned k = 6; k <= 200; ++k) {
        auto s = gamma_schedule(k);
        CHECK(s.values.size() == closed_form_phases(k));
        CHECK(s.values.back() == k / 2);
    }
    CHECK(gamma_schedule(16).values.size() == 4);
    CHECK_THROWS_AS(gamma_schedule(5), UnsupportedK);
}

TEST_CASE("capacities") {
    CHECK(capacity(64, 6) == 4);
    CHECK(internal_capacity(64, 6) == 5);
    CHECK(capacity(100, 6) == 5);
    CHECK(internal_capacity(100, 6) == 5);
    CHECK(sigma(64, 6) == 2);
    CHECK(sigma(64, 3) == 4);
    CHECK(sigma(1000, 3) == 10);
    CHECK(cluster_threshold(100, 2) == static_cast<std::size_t>(std::ceil(10 * std::log(100.0))));
    CHECK(density_threshold(256, 4) == doctest::Approx(4.0));
    CHECK_THROWS_AS(density_threshold(1, 6), InputError);
}

TEST_CASE("heavy") {
    CHECK(is_heavy(8, 64));
    CHECK_FALSE(is_heavy(7, 64));
}
