#include "doctest.h"

#include <set>

#include "eclab/family.hpp"

using namespace eclab;
using namespace eclab::family;

TEST_SUITE_BEGIN("family");

TEST_CASE("rho and xi") {
    const auto& f2 = FieldSpec::get(2);
    const auto& f4 = FieldSpec::get(4);
    CHECK(rho(f2, 0) == 0);
    CHECK(rho(f4, 0) == 0);
    CHECK(xi(f2) == 1);
    // rho(F_4) = {0,1}; the first element outside is code 2, which has trace 1
    CHECK(xi(f4) == 2);
    CHECK(f4.trace(xi(f4)) == 1);
    for (int q : {2, 4, 8, 16}) {
        const auto& fs = FieldSpec::get(q);
        std::set<uint8_t> image;
        for (int x = 0; x < q; ++x) image.insert(rho(fs, static_cast<uint8_t>(x)));
        CHECK(image.count(xi(fs)) == 0);
        CHECK(image.size() == static_cast<size_t>(q) / 2);  // rho is 2-to-1
    }
}

TEST_CASE("B_n members at q=2") {
    const auto& fs = FieldSpec::get(2);
    auto b1 = enumerate_B(fs, 1);
    REQUIRE(b1.size() == 2);
    CHECK(poly_to_string(fs, b1[0]) == "01");
    CHECK(poly_to_string(fs, b1[1]) == "11");

    auto b2 = enumerate_B(fs, 2);
    std::set<std::string> got;
    for (const auto& m : b2) got.insert(poly_to_string(fs, m));
    std::set<std::string> want = {"111", "0001", "1111", "011"};  // T^2+T+1, T^3, (T+1)^3, T^2+T
    CHECK(got == want);

    CHECK(enumerate_B(fs, 3).size() == 8);
}

TEST_CASE("G_s members and counts") {
    const auto& f2 = FieldSpec::get(2);
    auto g1 = enumerate_G(f2, 1);
    std::set<std::string> got;
    for (const auto& F : g1) got.insert(poly_to_string(f2, F));
    CHECK(got == std::set<std::string>{"01", "11"});  // T and T+1
    CHECK(enumerate_G(f2, 2).size() == 4);
    CHECK(enumerate_G(FieldSpec::get(4), 1).size() == 6);
}

TEST_CASE("F_1 members at q=2 are 1/T and 1/(T+1)") {
    const auto& fs = FieldSpec::get(2);
    auto f1 = enumerate(fs, Set::F, 1);
    REQUIRE(f1.size() == 2);
    for (const auto& u : f1) {
        CHECK(u.kind == Kind::real);
        CHECK(u.half_degree == 1);
        CHECK(u.genus() == 0);
        REQUIRE(u.finite.size() == 1);
        CHECK(u.finite[0].coeffs.size() == 1);
        CHECK(u.finite[0].coeffs[0] == Poly::constant(1));
        auto [num, den] = as_fraction(fs, u);
        CHECK(num == Poly::constant(1));
        CHECK(den == u.finite[0].prime);
    }
}

TEST_CASE("I_2 at q=2 contains u = T^3 and has the right kinds") {
    const auto& fs = FieldSpec::get(2);
    auto i2 = enumerate(fs, Set::I, 2);
    CHECK(i2.size() == 8);
    Poly T3 = poly_shift(Poly::constant(1), 3);
    bool found = false;
    for (const auto& u : i2) {
        CHECK(u.kind == Kind::ramified_imaginary);
        CHECK(u.genus() == 1);
        if (u.finite.empty() && u.infinite == T3) found = true;
    }
    CHECK(found);
}

TEST_CASE("exact cardinalities for q in {2,4}, n in 1..4") {
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        for (int n = 1; n <= 4; ++n) {
            CHECK(count(fs, Set::B, n) == expected_count(fs, Set::B, n));
            CHECK(count(fs, Set::G, n) == expected_count(fs, Set::G, n));
            CHECK(count(fs, Set::F, n) == expected_count(fs, Set::F, n));
            CHECK(count(fs, Set::Fprime, n) == expected_count(fs, Set::Fprime, n));
            CHECK(count(fs, Set::I, n) == expected_count(fs, Set::I, n));
        }
    }
    CHECK(expected_count(FieldSpec::get(2), Set::I, 2) == 8);
    CHECK(expected_count(FieldSpec::get(4), Set::I, 2) == 96);
    CHECK(expected_count(FieldSpec::get(4), Set::F, 1) == 12);
}

TEST_CASE("enumeration has no duplicate keys and is deterministic") {
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        int n = q == 2 ? 4 : 3;
        for (Set which : {Set::F, Set::Fprime, Set::I}) {
            std::set<std::string> keys;
            uint64_t total = 0;
            for_each_discriminant(fs, which, n, [&](const Discriminant& u) {
                keys.insert(key(fs, u));
                ++total;
            });
            CHECK(keys.size() == total);
        }
        auto a = enumerate(fs, Set::I, 2), b = enumerate(fs, Set::I, 2);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(key(fs, a[i]) == key(fs, b[i]));
    }
}

TEST_CASE("I_n partitions as sum of F_r x G_s") {
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        for (int n = 1; n <= 3; ++n) {
            uint64_t sum = 0;
            for (int r = 0; r <= n - 1; ++r) {
                uint64_t fr = r == 0 ? 1 : count(fs, Set::F, r);
                sum += fr * count(fs, Set::G, n - r);
            }
            CHECK(sum == count(fs, Set::I, n));
        }
    }
}

TEST_CASE("F' members carry the xi constant") {
    const auto& fs = FieldSpec::get(4);
    for (const auto& u : enumerate(fs, Set::Fprime, 1)) {
        CHECK(u.kind == Kind::inert_imaginary);
        CHECK(u.xi_flag);
        CHECK(u.infinite == Poly::constant(xi(fs)));
    }
}

TEST_CASE("discriminant validation rejects bad normal forms") {
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    PrimeBlock bad{T, {Poly::zero()}};  // top coefficient zero
    CHECK_THROWS_AS(make_discriminant(fs, {bad}, Poly::zero()), std::invalid_argument);
    Poly even_part{0, 0, 1};  // T^2: even-degree term
    CHECK_THROWS_AS(make_discriminant(fs, {}, even_part), std::invalid_argument);
}

TEST_SUITE_END();
