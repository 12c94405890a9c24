#include "eclab/fq.hpp"

#include <mutex>

namespace eclab {

namespace {

// Carry-less multiply of two F_2[x] polynomials given as bit masks, reduced
// modulo the field modulus.
uint8_t clmul_mod(uint16_t a, uint16_t b, uint16_t mod, int m) {
    uint32_t acc = 0;
    for (int i = 0; b >> i; ++i)
        if ((b >> i) & 1) acc ^= static_cast<uint32_t>(a) << i;
    for (int i = 2 * m - 2; i >= m; --i)
        if ((acc >> i) & 1) acc ^= static_cast<uint32_t>(mod) << (i - m);
    return static_cast<uint8_t>(acc & ((1u << m) - 1));
}

FieldSpec build(int m, uint16_t mod_bits) {
    FieldSpec fs;
    fs.m = m;
    fs.q = 1 << m;
    fs.modulus_bits = mod_bits;
    for (int a = 0; a < fs.q; ++a)
        for (int b = 0; b < fs.q; ++b)
            fs.mul_table[a][b] = clmul_mod(static_cast<uint16_t>(a), static_cast<uint16_t>(b), mod_bits, m);
    fs.inv_table[0] = 0;
    for (int a = 1; a < fs.q; ++a)
        for (int b = 1; b < fs.q; ++b)
            if (fs.mul_table[a][b] == 1) {
                fs.inv_table[a] = static_cast<uint8_t>(b);
                break;
            }
    for (int a = 0; a < fs.q; ++a) {
        uint8_t t = 0, s = static_cast<uint8_t>(a);
        for (int i = 0; i < m; ++i) {
            t ^= s;
            s = fs.mul_table[s][s];
        }
        fs.trace_table[a] = t;  // lands in {0,1}
    }
    return fs;
}

}  // namespace

const FieldSpec& FieldSpec::get(int q) {
    static std::once_flag once;
    static std::array<FieldSpec, 4> fields;
    std::call_once(once, [] {
        fields[0] = build(1, 0b10);
        fields[1] = build(2, 0b111);
        fields[2] = build(3, 0b1011);
        fields[3] = build(4, 0b10011);
    });
    switch (q) {
        case 2: return fields[0];
        case 4: return fields[1];
        case 8: return fields[2];
        case 16: return fields[3];
        default: throw std::invalid_argument("FieldSpec::get: q must be one of {2,4,8,16}");
    }
}

}  // namespace eclab
