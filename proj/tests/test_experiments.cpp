#include "doctest.h"

#include <cmath>

#include "eclab/character.hpp"
#include "eclab/experiments.hpp"
#include "eclab/prediction.hpp"
#include "eclab/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace eclab;
using namespace eclab::experiments;

TEST_SUITE_BEGIN("experiments");

TEST_CASE("zeroth moment counts the family") {
    auto r = empirical_moment(0, 4, 2);
    CHECK(r.value == 96.0);
    CHECK(r.family_size == 96);
}

TEST_CASE("first moment over I_2 at q=2 matches the direct sum") {
    const auto& fs = FieldSpec::get(2);
    CentralValue direct(Rat(0), Rat(0), 2);
    bool saw_t3 = false;
    family::for_each_I(fs, 2, [&](const family::Discriminant& u) {
        CentralValue v = lfunction::central_value(lfunction::l_star(fs, u));
        if (u.finite.empty() && u.infinite.degree() == 3 && v.a == Rat(2) && v.b == Rat(0)) saw_t3 = true;
        direct += v;
    });
    CHECK(saw_t3);  // u = T^3 contributes exactly 2
    auto swept = empirical_moment(1, 2, 2);
    CHECK(swept.exact == direct);
    auto serial = empirical_moment(1, 2, 2, false);
    CHECK(serial.exact == direct);
}

TEST_CASE("parallel and serial sweeps agree exactly; thread count does not matter") {
    auto a = empirical_moment(2, 4, 2, true);
    auto b = empirical_moment(2, 4, 2, false);
    CHECK(a.exact == b.exact);
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto r1 = empirical_ratio(0.3, 0.24, 4, 3);
    omp_set_num_threads(saved);
    auto r2 = empirical_ratio(0.3, 0.24, 4, 3);
    CHECK(r1.value == r2.value);  // bit-identical by fixed chunk order
#endif
}

TEST_CASE("F and F' first moments mirror each other in the irrational part") {
    // the xi-shift flips the sign of the q^{-1/2} component
    auto f = empirical_moment_FFprime(1, 4, 2, family::Set::F);
    auto fp = empirical_moment_FFprime(1, 4, 2, family::Set::Fprime);
    CHECK(f.exact.a == fp.exact.a);
    CHECK(f.exact.b == -fp.exact.b);
    CHECK(f.family_size == 192);
}

TEST_CASE("character averages: exact values and limits") {
    const auto& fs = FieldSpec::get(2);
    CHECK(empirical_char_average(Poly::constant(1), 2, 2) == Rat(1));
    Poly T2{0, 0, 1};
    CHECK(empirical_char_average(T2, 2, 2) == Rat(3, 4));
    CHECK(empirical_char_average(T2, 2, 3) == Rat(11, 16));
    CHECK(empirical_char_average(T2, 2, 4) == Rat(43, 64));
    // approaches a_{T^2} = 2/3 monotonically here
    CHECK(std::abs(Rat(43, 64).to_double() - 2.0 / 3.0) <
          std::abs(Rat(11, 16).to_double() - 2.0 / 3.0));
    // non-square: exactly zero at q=2 for m = T
    CHECK(empirical_char_average(Poly::gen(), 2, 3) == Rat(0));
    (void)fs;
}

TEST_CASE("ratio at alpha = gamma is exactly the family size") {
    auto r = empirical_ratio(0.3, 0.3, 4, 3);
    CHECK(r.value == 1536.0);
    CHECK(r.excluded == 0);
}

TEST_CASE("density with h = 1 counts all zeros") {
    double v = empirical_density([](double) { return 1.0; }, 4, 3);
    CHECK(v == 2.0 * 2.0 * 1536.0);  // 2g per member
}

TEST_CASE("scaled histogram: totals, rough symmetry, repulsion dip") {
    auto h = scaled_histogram(4, 3, 16, 2.0);
    REQUIRE(h.count.size() == 16);
    uint64_t total = 0;
    for (auto c : h.count) total += c;
    CHECK(total <= 2 * 2 * 1536);
    CHECK(total > 2 * 2 * 1536 / 2);  // most zeros land in |tau| < 2
    for (int b = 0; b < 8; ++b) {
        double lo = static_cast<double>(h.count[static_cast<size_t>(b)]);
        double hi = static_cast<double>(h.count[static_cast<size_t>(15 - b)]);
        CHECK(std::abs(lo - hi) <= std::max(12.0, 0.12 * (lo + hi)));
    }
    // symplectic repulsion: depleted near tau = 0 against the outer average
    double inner = (h.density[7] + h.density[8]) / 2.0;
    double outer = 0.0;
    for (int b : {0, 1, 2, 3, 4, 5}) outer += h.density[static_cast<size_t>(b)] + h.density[static_cast<size_t>(15 - b)];
    outer /= 12.0;
    CHECK(inner < 0.6 * outer);
}

TEST_CASE("compare produces coherent reports") {
    CompareParams p;
    p.q = 4;
    p.n = 3;
    p.k = 1;
    Report r = compare("moment", p);
    CHECK(r.kind == "moment");
    CHECK(r.family_size == 1536);
    CHECK(r.relative_deviation < 0.05);
    CHECK(!r.empirical_exact.empty());
    CHECK(r.to_json().find("\"relative_deviation\"") != std::string::npos);
    CHECK(Report::csv_header().rfind("kind,", 0) == 0);

    p.alpha = 0.3;
    p.gamma = 0.24;
    Report rr = compare("ratio", p);
    CHECK(rr.relative_deviation < 0.05);

    p.h = "fejer2";
    Report rd = compare("density", p);
    CHECK(rd.relative_deviation < 0.05);

    CHECK_THROWS_AS(compare("nonsense", p), std::invalid_argument);
    CHECK(compare_kinds().size() == 6);
}

TEST_CASE("deviation trends decrease for the q=4 families") {
    CompareParams p;
    p.q = 4;
    p.k = 1;
    for (const char* kind : {"moment", "moment_F", "moment_Fprime"}) {
        p.n = 2;
        double d2 = compare(kind, p).relative_deviation;
        p.n = 3;
        double d3 = compare(kind, p).relative_deviation;
        CHECK(d3 <= d2);
    }
}

TEST_CASE("test function registry") {
    auto one = test_function("one", 4);
    CHECK(one(0.3) == 1.0);
    auto f3 = test_function("fejer3", 4);
    CHECK(f3(0.0) == doctest::Approx(1.0 + 2.0 * (0.75 + 0.5 + 0.25)));
    // period 2 pi / log q
    double L = 2.0 * std::numbers::pi / std::log(4.0);
    CHECK(f3(0.37) == doctest::Approx(f3(0.37 + L)).epsilon(1e-12));
    CHECK(f3(0.37) == doctest::Approx(f3(-0.37)).epsilon(1e-12));
    CHECK_THROWS_AS(test_function("bogus", 4), std::invalid_argument);
}

TEST_SUITE_END();
