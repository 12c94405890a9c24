#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace eclab {

/// Arithmetic in F_{2^m} for m <= 4, with elements stored as bit vectors in
/// the power basis of a fixed irreducible modulus over F_2.  Addition is XOR;
/// multiplication and inversion go through small tables built once per field.
///
/// Moduli (bit i = coefficient of x^i):
///   m=1: x          m=2: x^2+x+1
///   m=3: x^3+x+1    m=4: x^4+x+1
///
/// Element ordering is the integer value of the bit vector; enumeration code
/// everywhere relies on this being fixed.
struct FieldSpec {
    int m = 1;
    int q = 2;
    uint16_t modulus_bits = 0b10;

    std::array<std::array<uint8_t, 16>, 16> mul_table{};
    std::array<uint8_t, 16> inv_table{};
    std::array<uint8_t, 16> trace_table{};  // absolute trace to F_2

    static const FieldSpec& get(int q);

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_table[a][b]; }
    uint8_t inv(uint8_t a) const {
        if (a == 0) throw std::domain_error("FieldSpec::inv: zero element");
        return inv_table[a];
    }
    int trace(uint8_t a) const { return trace_table[a]; }

    uint8_t pow(uint8_t a, unsigned e) const {
        uint8_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

}  // namespace eclab
