#include "doctest.h"
#include "oracles.hpp"
#include "spanner/errors.hpp"
#include "spanner/gf2.hpp"
#include "spanner/rng.hpp"

using namespace spanner;

TEST_CASE("moduli are irreducible") {
    for (unsigned m = 1; m <= 32; ++m) {
        CAPTURE(m);
        std::uint64_t f = irreducible_poly(m);
        CHECK(oracle::poly_degree(f) == m);
        CHECK(oracle::rabin_irreducible(f));
    }
    CHECK_FALSE(oracle::rabin_irreducible(0b101));  // x^2 + 1
    CHECK_THROWS_AS(irreducible_poly(0), InputError);
    CHECK_THROWS_AS(irreducible_poly(33), InputError);
}

TEST_CASE("multiplication agrees with schoolbook reduction") {
    CounterRng rng(99);
    std::uint64_t c = 0;
    for (unsigned m = 1; m <= 32; ++m) {
        GF2Field f(m);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t a = rng.word(c++) & f.mask(), b = rng.word(c++) & f.mask();
            CHECK(f.mul(a, b) == oracle::gf_mul(a, b, f.modulus()));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(a, b) == (a ^ b));
        }
    }
}

TEST_CASE("multiplicative group order") {
    CounterRng rng(7);
    for (unsigned m = 2; m <= 20; ++m) {
        GF2Field f(m);
        const std::uint64_t order = (std::uint64_t{1} << m) - 1;
        for (std::uint64_t i = 0; i < 20; ++i) {
            std::uint64_t a = rng.word(i + 100 * m) & f.mask();
            if (a == 0) continue;
            CHECK(f.pow(a, order) == 1);
            CHECK(f.mul(a, f.pow(a, order - 1)) == 1);
        }
    }
}

TEST_CASE("GF(2^3) by hand") {
    GF2Field f(3);  // x^3 + x + 1
    CHECK(f.modulus() == 0b1011);
    CHECK(f.mul(0b010, 0b100) == 0b011);  // x * x^2 = x^3 = x + 1
    CHECK(f.mul(0b110, 0b110) == 0b010);  // (x^2+x)^2 = x^4 + x^2 = x
}
