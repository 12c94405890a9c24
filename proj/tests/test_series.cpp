#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "eclab/series.hpp"

using namespace eclab::series;

namespace {

// Taylor coefficients of s/(1 - q^{-s}) at 0 by least-squares-free
// interpolation: sample at 2J+1 points and solve the Vandermonde system in
// extended precision.
std::vector<double> zeta_shift_oracle(int q, int order) {
    const int npts = 2 * order + 3;
    const long double lq = std::log(static_cast<long double>(q));
    auto f = [&](long double s) -> long double {
        if (s == 0.0L) return 1.0L / lq;
        return s / (-std::expm1l(-s * lq));
    };
    const long double h = 0.04L;
    std::vector<std::vector<long double>> A(npts, std::vector<long double>(npts + 1, 0.0L));
    for (int i = 0; i < npts; ++i) {
        long double s = h * (i - (npts - 1) / 2.0L);
        long double pw = 1.0L;
        for (int j = 0; j < npts; ++j) {
            A[i][j] = pw;
            pw *= s;
        }
        A[i][npts] = f(s);
    }
    for (int col = 0; col < npts; ++col) {  // Gaussian elimination, partial pivot
        int piv = col;
        for (int r = col + 1; r < npts; ++r)
            if (std::fabs((double)A[r][col]) > std::fabs((double)A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < npts; ++r) {
            if (r == col) continue;
            long double m = A[r][col] / A[col][col];
            for (int c2 = col; c2 <= npts; ++c2) A[r][c2] -= m * A[col][c2];
        }
    }
    std::vector<double> out(static_cast<size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) out[static_cast<size_t>(j)] = static_cast<double>(A[j][npts] / A[j][j]);
    return out;
}

MultiSeries random_series(const Shape& sh, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MultiSeries m = MultiSeries::zero(sh);
    for (auto& cell : m.tab) cell = XPoly(d(rng));
    return m;
}

double max_abs_diff(const MultiSeries& a, const MultiSeries& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.tab.size(); ++i) {
        size_t n = std::max(a.tab[i].c.size(), b.tab[i].c.size());
        for (size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a.tab[i].coeff(static_cast<int>(j)) - b.tab[i].coeff(static_cast<int>(j))));
    }
    return worst;
}

}  // namespace

TEST_SUITE_BEGIN("series");

TEST_CASE("product (1+z1)(1+z2) and truncation behavior") {
    Shape sh{2, 3, 0, 0};
    MultiSeries one = MultiSeries::constant(sh, 1.0);
    MultiSeries a = ms_add(one, MultiSeries::variable(sh, 0));
    MultiSeries b = ms_add(one, MultiSeries::variable(sh, 1));
    MultiSeries p = ms_mul(a, b);
    CHECK(extract_coeff(p, {0, 0}).eval(0) == 1.0);
    CHECK(extract_coeff(p, {1, 0}).eval(0) == 1.0);
    CHECK(extract_coeff(p, {0, 1}).eval(0) == 1.0);
    CHECK(extract_coeff(p, {1, 1}).eval(0) == 1.0);
    CHECK(extract_coeff(p, {2, 0}).is_zero());

    // z1^ord * z1 truncates to zero
    Shape u{1, 3, 0, 0};
    MultiSeries z = MultiSeries::variable(u, 0);
    MultiSeries z3 = ms_mul(ms_mul(z, z), z);
    MultiSeries z4 = ms_mul(z3, z);
    for (const auto& cell : z4.tab) CHECK(cell.is_zero());

    CHECK_THROWS_AS(extract_coeff(p, {4, 0}), std::out_of_range);
    CHECK_THROWS_AS(ms_mul(a, MultiSeries::constant(Shape{2, 2, 0, 0}, 1.0)), std::invalid_argument);
}

TEST_CASE("scaling by the formal variable shifts x-degree") {
    Shape sh{1, 2, 0, 3};
    MultiSeries a = ms_add(MultiSeries::constant(sh, 2.0), MultiSeries::variable(sh, 0));
    MultiSeries ax = ms_scale_xpoly(a, XPoly::monomial(1.0, 1));
    CHECK(extract_coeff(ax, {0}).degree() == 1);
    CHECK(extract_coeff(ax, {0}).coeff(1) == 2.0);
    CHECK(extract_coeff(ax, {1}).coeff(1) == 1.0);
}

TEST_CASE("exp of (x log q / 2)(z1 + z2)") {
    const double lq = std::log(2.0);
    Shape sh{2, 2, 0, 4};
    XPoly half_x_lq = XPoly::monomial(lq / 2.0, 1);
    MultiSeries arg = ms_scale_xpoly(ms_add(MultiSeries::variable(sh, 0), MultiSeries::variable(sh, 1)), half_x_lq);
    MultiSeries e = exp_series(arg);
    XPoly c11 = extract_coeff(e, {1, 1});
    CHECK(c11.degree() == 2);
    CHECK(c11.coeff(2) == doctest::Approx(lq * lq / 4.0).epsilon(1e-14));
    XPoly c00 = extract_coeff(e, {0, 0});
    CHECK(c00.degree() == 0);
    CHECK(c00.coeff(0) == 1.0);

    MultiSeries ez = exp_series(MultiSeries::zero(sh));
    CHECK(extract_coeff(ez, {0, 0}).coeff(0) == 1.0);
    CHECK(extract_coeff(ez, {1, 0}).is_zero());

    CHECK_THROWS_AS(exp_series(MultiSeries::constant(sh, 1.0)), std::invalid_argument);
}

TEST_CASE("reciprocal of 1 - z is the geometric series") {
    Shape sh{1, 5, 0, 0};
    MultiSeries a = ms_sub(MultiSeries::constant(sh, 1.0), MultiSeries::variable(sh, 0));
    MultiSeries r = recip_series(a);
    for (int j = 0; j <= 5; ++j) CHECK(extract_coeff(r, {j}).eval(0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(recip_series(MultiSeries::variable(sh, 0)), std::invalid_argument);
}

TEST_CASE("zeta shift jet: named leading coefficients and the numeric oracle") {
    for (int q : {2, 4}) {
        const double lq = std::log(static_cast<double>(q));
        auto h = zeta_shift_jet(q, 6);
        CHECK(h[0] == doctest::Approx(1.0 / lq).epsilon(1e-14));
        CHECK(h[1] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(h[2] == doctest::Approx(lq / 12.0).epsilon(1e-14));
        CHECK(std::abs(h[3]) < 1e-15);
        CHECK(h[4] == doctest::Approx(-lq * lq * lq / 720.0).epsilon(1e-12));
        auto oracle = zeta_shift_oracle(q, 6);
        for (int j = 0; j <= 6; ++j) CHECK(std::abs(h[static_cast<size_t>(j)] - oracle[static_cast<size_t>(j)]) < 1e-9);
    }
}

TEST_CASE("compose_sum re-expands univariate series") {
    Shape sh{2, 3, 0, 0};
    std::vector<double> lin = {0.0, 1.0};
    MultiSeries s = compose_sum(lin, 0, 1, sh);
    CHECK(extract_coeff(s, {1, 0}).eval(0) == 1.0);
    CHECK(extract_coeff(s, {0, 1}).eval(0) == 1.0);
    CHECK(extract_coeff(s, {1, 1}).is_zero());

    std::vector<double> sq = {0.0, 0.0, 1.0};
    MultiSeries s2 = compose_sum(sq, 0, 1, sh);
    CHECK(extract_coeff(s2, {2, 0}).eval(0) == 1.0);
    CHECK(extract_coeff(s2, {1, 1}).eval(0) == 2.0);
    CHECK(extract_coeff(s2, {0, 2}).eval(0) == 1.0);

    std::vector<double> cst = {3.0};
    MultiSeries sc = compose_sum(cst, 0, 1, sh);
    CHECK(extract_coeff(sc, {0, 0}).eval(0) == 3.0);
    CHECK(extract_coeff(sc, {1, 0}).is_zero());

    // diagonal: f(2 z_0)
    MultiSeries sd = compose_sum(sq, 0, 0, sh);
    CHECK(extract_coeff(sd, {2, 0}).eval(0) == 4.0);
}

TEST_CASE("ring axioms under truncation") {
    std::mt19937 rng(777);
    for (int rep = 0; rep < 5; ++rep) {
        Shape sh{3, 3, 5, 0};
        MultiSeries a = random_series(sh, rng), b = random_series(sh, rng), c = random_series(sh, rng);
        MultiSeries ab_c = ms_mul(ms_mul(a, b), c);
        MultiSeries a_bc = ms_mul(a, ms_mul(b, c));
        CHECK(max_abs_diff(ab_c, a_bc) < 1e-12);
        CHECK(max_abs_diff(ms_mul(a, b), ms_mul(b, a)) < 1e-14);
    }
}

TEST_CASE("exp is a homomorphism and recip inverts") {
    std::mt19937 rng(1234);
    for (int rep = 0; rep < 5; ++rep) {
        Shape sh{2, 4, 0, 0};
        MultiSeries a = random_series(sh, rng), b = random_series(sh, rng);
        a.tab[0] = XPoly{};
        b.tab[0] = XPoly{};
        a = ms_scale(a, 0.3);
        b = ms_scale(b, 0.3);
        MultiSeries lhs = exp_series(ms_add(a, b));
        MultiSeries rhs = ms_mul(exp_series(a), exp_series(b));
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);

        MultiSeries u = random_series(sh, rng);
        u.tab[0] = XPoly(1.0 + 0.2 * rep);
        MultiSeries prod = ms_mul(recip_series(u), u);
        MultiSeries one = MultiSeries::constant(sh, 1.0);
        CHECK(max_abs_diff(prod, one) < 1e-12);
    }
}

TEST_CASE("eval_at sums the truncated polynomial") {
    Shape sh{2, 2, 0, 0};
    MultiSeries a = ms_add(MultiSeries::constant(sh, 1.5),
                           ms_scale(ms_mul(MultiSeries::variable(sh, 0), MultiSeries::variable(sh, 1)), 2.0));
    std::complex<double> v = eval_at(a, {{0.5, 0.0}, {0.25, 0.0}});
    CHECK(v.real() == doctest::Approx(1.5 + 2.0 * 0.5 * 0.25));
}

TEST_SUITE_END();
