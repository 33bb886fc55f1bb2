#include "spanner/gf2.hpp"

#include <array>
#include <initializer_list>
#include <string>

#include "spanner/errors.hpp"

namespace spanner {

namespace {

// Middle terms of a low-weight irreducible polynomial per degree.
const std::array<std::initializer_list<unsigned>, 33> kTerms = {{
    {},          {},        {1},     {1},        {1},        {2},        {1},     {1},
    {4, 3, 1},   {4},       {3},     {2},        {3},        {4, 3, 1},  {5},     {1},
    {5, 3, 1},   {3},       {7},     {5, 2, 1},  {3},        {2},        {1},     {5},
    {4, 3, 1},   {3},       {4, 3, 1}, {5, 2, 1}, {1},       {2},        {1},     {3},
    {7, 3, 2},
}};

}  // namespace

std::uint64_t irreducible_poly(unsigned m) {
    if (m < 1 || m > 32) throw InputError("field degree must be in [1, 32], got " + std::to_string(m));
    if (m == 1) return 0b11;  // x + 1
    std::uint64_t p = (std::uint64_t{1} << m) | 1;
    for (unsigned t : kTerms[m]) p |= std::uint64_t{1} << t;
    return p;
}

GF2Field::GF2Field(unsigned m)
    : m_(m), poly_(irreducible_poly(m)), mask_((std::uint64_t{1} << m) - 1) {}

std::uint64_t GF2Field::mul(std::uint64_t a, std::uint64_t b) const {
    a &= mask_;
    b &= mask_;
    std::uint64_t r = 0;
    const std::uint64_t top = std::uint64_t{1} << m_;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= poly_;
    }
    return r;
}

std::uint64_t GF2Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

}  // namespace spanner
