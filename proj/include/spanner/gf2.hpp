#pragma once

#include <cstdint>

namespace spanner {

// Full modulus (x^m term included) of the irreducible polynomial used for
// GF(2^m), 1 <= m <= 32.
std::uint64_t irreducible_poly(unsigned m);

// GF(2^m) with elements as the low m bits of a word.
class GF2Field {
public:
    explicit GF2Field(unsigned m);

    unsigned degree() const { return m_; }
    std::uint64_t modulus() const { return poly_; }
    std::uint64_t mask() const { return mask_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

private:
    unsigned m_;
    std::uint64_t poly_;
    std::uint64_t mask_;
};

}  // namespace spanner
