#include "doctest.h"

#include <cmath>
#include <vector>

#include "eclab/character.hpp"

using namespace eclab;
using namespace eclab::family;
using namespace eclab::character;

namespace {

Discriminant disc_from_poly_part(const FieldSpec& fs, const Poly& F) {
    return make_discriminant(fs, {}, F);
}

}  // namespace

TEST_SUITE_BEGIN("character");

TEST_CASE("hasse symbol named cases for u = T^3 at q=2") {
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    Poly T1 = poly_add(T, Poly::constant(1));
    Discriminant u = disc_from_poly_part(fs, poly_shift(Poly::constant(1), 3));

    CHECK(hasse(fs, u, T) == 0);   // u = 0 mod T, X = 0 solves
    CHECK(hasse(fs, u, T1) == 1);  // u = 1 mod T+1, unsolvable over F_2
    Poly t2t1{1, 1, 1};
    CHECK(hasse(fs, u, t2t1) == 0);  // T^3 = 1 mod T^2+T+1, trace 0 in F_4

    CHECK(chi(fs, u, Poly::constant(1)) == 1);
    CHECK(chi(fs, u, poly_mul(fs, T1, T1)) == 1);  // even multiplicity
    CHECK(chi(fs, u, poly_mul(fs, T, T1)) == -1);
}

TEST_CASE("hasse throws when P divides the denominator") {
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    Discriminant u = make_discriminant(fs, {PrimeBlock{T, {Poly::constant(1)}}}, Poly::zero());
    CHECK_THROWS_AS(hasse(fs, u, T), std::domain_error);
    CHECK(chi(fs, u, T) == 0);
    CHECK(chi(fs, u, poly_mul(fs, T, T)) == 0);
}

TEST_CASE("chi is multiplicative (exhaustive, q=2, deg <= 3, u in I_2)") {
    const auto& fs = FieldSpec::get(2);
    std::vector<Poly> fpool;
    for (int d = 0; d <= 3; ++d)
        algebra::for_each_monic(fs, d, [&](const Poly& f) { fpool.push_back(f); });
    for (const auto& u : enumerate(fs, Set::I, 2))
        for (const auto& f : fpool)
            for (const auto& g : fpool)
                CHECK(chi(fs, u, poly_mul(fs, f, g)) == chi(fs, u, f) * chi(fs, u, g));
}

TEST_CASE("hasse is additive in u") {
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    Poly T3 = poly_shift(Poly::constant(1), 3);
    Discriminant a = disc_from_poly_part(fs, T3);
    Discriminant b = disc_from_poly_part(fs, T);
    Discriminant ab = disc_from_poly_part(fs, poly_add(T3, T));
    // with a finite part as well: 1/T + T^3 vs 1/T and T^3
    Discriminant c = make_discriminant(fs, {PrimeBlock{T, {Poly::constant(1)}}}, Poly::zero());
    Discriminant cb = make_discriminant(fs, {PrimeBlock{T, {Poly::constant(1)}}}, T3);
    for (int d = 1; d <= 3; ++d)
        for (const Poly& P : algebra::irreducibles(fs, d)) {
            CHECK(hasse(fs, ab, P) == (hasse(fs, a, P) ^ hasse(fs, b, P)));
            if (!(P == T)) CHECK(hasse(fs, cb, P) == (hasse(fs, c, P) ^ hasse(fs, a, P)));
        }
}

TEST_CASE("symbol engine matches the direct character") {
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        int n = 2, maxf = 4;
        SymbolEngine eng(fs, n, maxf);
        std::vector<int8_t> sym(static_cast<size_t>(eng.prime_count()));
        for (Set which : {Set::I, Set::F, Set::Fprime}) {
            for (const auto& u : enumerate(fs, which, n)) {
                eng.symbols(u, sym.data());
                for (int d = 0; d <= maxf; ++d) {
                    uint64_t ranks = 1;
                    for (int i = 0; i < d; ++i) ranks *= static_cast<uint64_t>(q);
                    for (uint64_t r = 0; r < ranks; ++r) {
                        Poly f = monic_from_rank(fs, d, r);
                        CHECK(eng.chi_from_symbols(sym.data(), d, r) == chi(fs, u, f));
                    }
                }
            }
        }
    }
}

TEST_CASE("engine dirichlet coefficients match direct sums") {
    const auto& fs = FieldSpec::get(4);
    SymbolEngine eng(fs, 2, 3);
    std::vector<int8_t> sym(static_cast<size_t>(eng.prime_count()));
    for (const auto& u : enumerate(fs, Set::I, 2)) {
        eng.symbols(u, sym.data());
        long long c[4];
        eng.dirichlet_coeffs(sym.data(), 3, c);
        for (int d = 0; d <= 3; ++d) {
            long long direct = 0;
            algebra::for_each_monic(fs, d, [&](const Poly& f) { direct += chi(fs, u, f); });
            CHECK(c[d] == direct);
        }
    }
}

TEST_CASE("family averages of chi(m) drift toward the square/non-square limits") {
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    Poly T2 = poly_mul(fs, T, T);
    auto avg = [&](const Poly& m, int n) {
        long long total = 0, cnt = 0;
        for_each_I(fs, n, [&](const Discriminant& u) {
            total += chi(fs, u, m);
            ++cnt;
        });
        return static_cast<double>(total) / static_cast<double>(cnt);
    };
    double dev2 = std::abs(avg(T2, 2) - 2.0 / 3.0);
    double dev3 = std::abs(avg(T2, 3) - 2.0 / 3.0);
    CHECK(dev3 <= dev2);
    double z2 = std::abs(avg(T, 2));
    double z3 = std::abs(avg(T, 3));
    CHECK(z3 <= z2);
}

TEST_SUITE_END();
