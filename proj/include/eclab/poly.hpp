#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eclab/fq.hpp"

namespace eclab {

/// Dense polynomial over F_q, coefficients lowest degree first, no trailing
/// zeros.  The zero polynomial has an empty coefficient vector.
struct Poly {
    std::vector<uint8_t> c;

    Poly() = default;
    explicit Poly(std::vector<uint8_t> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly{}; }
    static Poly constant(uint8_t v) { return v ? Poly{{v}} : Poly{}; }
    static Poly gen() { return Poly{{0, 1}}; }  // T

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    uint8_t sgn() const { return c.empty() ? 0 : c.back(); }       // leading coefficient
    bool monic() const { return sgn() == 1; }
    uint8_t coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }

    Poly(std::initializer_list<uint8_t> il) : c(il) { trim(); }
};

/// Canonical order: by degree, then lexicographic on (c_0, c_1, ...) by
/// element code.  Matches the enumeration rank order below.
bool poly_less(const Poly& a, const Poly& b);

uint64_t norm(const FieldSpec& fs, const Poly& f);  // q^deg f, norm(0) undefined

Poly poly_add(const Poly& a, const Poly& b);  // characteristic 2: also subtraction
Poly poly_scale(const FieldSpec& fs, const Poly& a, uint8_t s);
Poly poly_mul(const FieldSpec& fs, const Poly& a, const Poly& b);
Poly poly_shift(const Poly& a, int k);  // multiply by T^k

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const FieldSpec& fs, const Poly& a, const Poly& b);
Poly poly_mod(const FieldSpec& fs, const Poly& a, const Poly& b);
bool poly_divides(const FieldSpec& fs, const Poly& d, const Poly& a);

Poly poly_gcd(const FieldSpec& fs, Poly a, Poly b);  // monic gcd

Poly poly_pow(const FieldSpec& fs, Poly base, unsigned e);

/// Rank <-> polynomial bijections used for deterministic enumeration.
/// Monic of degree d: rank in [0, q^d), digits (c_0 most significant).
Poly monic_from_rank(const FieldSpec& fs, int d, uint64_t rank);
uint64_t rank_of_monic(const FieldSpec& fs, const Poly& f);
/// Any polynomial of degree < d (including zero): rank in [0, q^d).
Poly residue_from_rank(const FieldSpec& fs, int d, uint64_t rank);
uint64_t rank_of_residue(const FieldSpec& fs, int d, const Poly& f);

/// Base-q coefficient string, lowest degree first, digits 0-9a-f.
std::string poly_to_string(const FieldSpec& fs, const Poly& f);
Poly poly_from_string(const FieldSpec& fs, const std::string& s);

/// Human-oriented rendering like "T^3 + a*T + 1" (a = element code).
std::string poly_pretty(const FieldSpec& fs, const Poly& f);

}  // namespace eclab
