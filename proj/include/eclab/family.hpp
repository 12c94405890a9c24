#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eclab/algebra.hpp"
#include "eclab/poly.hpp"

namespace eclab::family {

enum class Kind { ramified_imaginary, real, inert_imaginary };

std::string kind_name(Kind k);

/// One prime block of a normalized discriminant: the coefficients
/// A_{P,1},...,A_{P,l} of the partial fractions with denominators
/// P, P^3, ..., P^{2l-1}.  The last coefficient is nonzero.
struct PrimeBlock {
    Poly prime;
    std::vector<Poly> coeffs;
};

/// Normalized representative u of a separable quadratic extension of
/// F_q(T) in even characteristic: a sum of prime fractions plus a
/// polynomial part alpha + sum alpha_i T^{2i-1} with alpha in {0, xi}.
/// The representation is canonical, so serialized keys dedup exactly.
struct Discriminant {
    std::vector<PrimeBlock> finite;  // sorted by prime, (degree, lex)
    Poly infinite;                   // polynomial part; zero when absent
    bool xi_flag = false;            // constant term equals xi
    Kind kind = Kind::real;
    int half_degree = 0;             // n: deg(D_u) = 2n

    int genus() const { return half_degree - 1; }
};

/// Additive map x -> x^2 + x on F_q.
uint8_t rho(const FieldSpec& fs, uint8_t x);
/// Smallest element (in the fixed ordering) outside rho(F_q).
uint8_t xi(const FieldSpec& fs);

/// Assemble a Discriminant from parts, deriving kind/half_degree; validates
/// the normal form (coefficient degrees, nonzero top coefficients, odd
/// polynomial part shape).
Discriminant make_discriminant(const FieldSpec& fs, std::vector<PrimeBlock> finite, Poly infinite);

/// u as an actual rational function: returns (numerator, denominator).
std::pair<Poly, Poly> as_fraction(const FieldSpec& fs, const Discriminant& u);

/// Canonical one-line key "r|M|coeffs|F" in base-q coefficient encoding.
std::string key(const FieldSpec& fs, const Discriminant& u);

/// The sets of section families:
///   B_n:  monic M with all valuations 0 or odd and deg(M * rad(M)) = 2n
///   F_n:  normalized fractions over M in B_n (real);  F'_n = F_n + xi
///   G_s:  alpha + sum_{i<=s} alpha_i T^{2i-1}, alpha_s != 0
///   I_n:  unions of F_r + G_s over r+s = n, s >= 1 (ramified imaginary)
std::vector<Poly> enumerate_B(const FieldSpec& fs, int n);
void for_each_G(const FieldSpec& fs, int s, const std::function<void(const Poly&)>& fn);
std::vector<Poly> enumerate_G(const FieldSpec& fs, int s);

void for_each_F(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn);
void for_each_Fprime(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn);
void for_each_I(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn);

enum class Set { B, G, F, Fprime, I };

Set set_from_name(const std::string& name);
void for_each_discriminant(const FieldSpec& fs, Set which, int n,
                           const std::function<void(const Discriminant&)>& fn);
std::vector<Discriminant> enumerate(const FieldSpec& fs, Set which, int n);

uint64_t count(const FieldSpec& fs, Set which, int n);           // by enumeration
uint64_t expected_count(const FieldSpec& fs, Set which, int n);  // closed formulas

}  // namespace eclab::family
