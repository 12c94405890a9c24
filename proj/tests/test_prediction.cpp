#include "doctest.h"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "eclab/algebra.hpp"
#include "eclab/lfunction.hpp"
#include "eclab/prediction.hpp"

using namespace eclab;
using namespace eclab::prediction;

namespace {

double fejer_kernel(int q, int J, double t) {
    double lq = std::log(static_cast<double>(q));
    double s = 0.0;
    for (int j = -J; j <= J; ++j) s += (1.0 - std::abs(j) / (J + 1.0)) * std::cos(j * lq * t);
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("prediction");

TEST_CASE("zeta_A closed form and pole") {
    CHECK(zeta_A(2.0, 2).real() == doctest::Approx(2.0));
    CHECK(zeta_A(2.0, 4).real() == doctest::Approx(4.0 / 3.0));
    CHECK(std::abs(inv_zeta_A(1.0, 2)) == 0.0);
    CHECK(std::isinf(zeta_A(1.0, 4).real()));
    // zeta'/zeta against finite differences
    for (int q : {2, 4}) {
        std::complex<double> s(1.7, 0.3), h(1e-6, 0.0);
        auto fd = (std::log(zeta_A(s + h, q)) - std::log(zeta_A(s - h, q))) / (2.0 * h);
        CHECK(std::abs(fd - zeta_A_logderiv(s, q)) < 1e-8);
    }
}

TEST_CASE("euler_P partial product and tail") {
    auto ep1 = euler_P(2, 1);
    CHECK(ep1.p1.value == doctest::Approx(25.0 / 36.0).epsilon(1e-14));
    double prev = 1.0;
    for (int D = 1; D <= 8; ++D) {
        auto ep = euler_P(2, D);
        CHECK(ep.p1.value < prev);  // each factor is < 1
        prev = ep.p1.value;
        CHECK(ep.p1.tail_estimate > 0.0);
        CHECK(ep.p1.tail_estimate < 4.0 * std::pow(2.0, -D));
    }
    // (P'/P)(1) is positive: the product increases in s
    CHECK(euler_P(2, 18).logderiv.value > 0.0);
    CHECK(euler_P(4, 9).logderiv.value > 0.0);
}

TEST_CASE("A-jet low-order coefficients match P(1) and 2P'(1)") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        auto ep = euler_P(q, D);
        auto jet = A_jet(1, q, D, 1, 1);
        double a0 = series::extract_coeff(jet, {0}).coeff(0);
        double a1 = series::extract_coeff(jet, {1}).coeff(0);
        CHECK(a0 == doctest::Approx(ep.p1.value).epsilon(1e-12));
        CHECK(a1 == doctest::Approx(2.0 * ep.p1.value * ep.logderiv.value).epsilon(1e-10));
    }
}

TEST_CASE("A-jet constant terms equal the closed products, k in 2..5") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        for (int k = 2; k <= 5; ++k) {
            auto cl = A_closed(k, q, D);
            auto jet = A_jet(k, q, D, 0, 0);
            double jv = series::extract_coeff(jet, std::vector<int>(static_cast<size_t>(k), 0)).coeff(0);
            CHECK(std::abs(cl.value - jv) <= 1e-10 * std::abs(cl.value));
        }
    }
}

TEST_CASE("residue engine reproduces the closed first-moment polynomial") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        auto closed = q1_closed(q, D);
        auto Q1 = q_k(1, q, D);
        for (int i = 0; i <= 1; ++i)
            CHECK(std::abs(Q1.poly.coeff(i) - closed.coeff(i)) <= 1e-8 * std::abs(closed.coeff(i)));
    }
}

TEST_CASE("residue engine matches the derivative assemblies for Q2 and Q3") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        auto jet2 = A_jet(2, q, D, 3, 3);
        auto Q2 = q_k(2, q, D);
        auto P2 = q2_from_partials(q, jet2);
        for (int i = 0; i <= 3; ++i)
            CHECK(std::abs(Q2.poly.coeff(i) - P2.coeff(i)) <= 1e-6 * std::abs(P2.coeff(i)));

        auto jet3 = A_jet(3, q, D, 5, 6);
        auto Q3 = q_k(3, q, D);
        auto P3 = q3_from_partials(q, jet3);
        for (int i = 0; i <= 6; ++i)
            CHECK(std::abs(Q3.poly.coeff(i) - P3.coeff(i)) <= 1e-6 * std::abs(P3.coeff(i)));
    }
}

TEST_CASE("q_k leading x-coefficient is A(0,..,0)-proportional") {
    // x^{k(k+1)/2} coefficient: A * 2^{k(k+1)/2} / (2^k k(k+1)/2 ... ) pinned
    // indirectly through the leading-asymptotic ratio below; here check positivity
    for (int q : {2, 4}) {
        int D = q == 2 ? 12 : 8;
        for (int k = 1; k <= 3; ++k) {
            auto Q = q_k(k, q, D);
            CHECK(Q.poly.degree() == k * (k + 1) / 2);
            CHECK(Q.poly.coeff(k * (k + 1) / 2) > 0.0);
        }
    }
}

TEST_CASE("leading constants are the exact small rationals") {
    CHECK(leading_constant(1) == Rat(2));
    CHECK(leading_constant(2) == Rat(2, 3));
    CHECK(leading_constant(3) == Rat(2, 45));
    CHECK(leading_constant(4) == Rat(2, 4725));
    CHECK(leading_constant(5) == Rat(2, 4465125));
}

TEST_CASE("moment predictions: k=0 gives the family size, k=1 the closed main term") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        for (int g : {1, 2, 3}) {
            CHECK(moment_prediction(0, q, g, D) == doctest::Approx(family_size_I(q, g + 1)));
            CHECK(moment_prediction(1, q, g, D) ==
                  doctest::Approx(first_moment_main_I(q, g, D)).epsilon(1e-10));
        }
    }
}

TEST_CASE("moment prediction approaches its leading asymptotic") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        for (int k = 2; k <= 4; ++k) {
            auto ak = A_closed(k, q, D);
            double lead = leading_constant(k).to_double();
            auto Q = q_k(k, q, D);
            // moment_prediction / (lead q^{2g+1}/zeta ...) with the overflowing
            // q-powers cancelled: 2 Q_k(2g+1) / (lead g^{k(k+1)/2} A)
            auto ratio = [&](double g) {
                return 2.0 * Q.poly.eval(2.0 * g + 1.0) /
                       (lead * std::pow(g, k * (k + 1) / 2.0) * ak.value);
            };
            double r1 = std::abs(ratio(1e3) - 1.0);
            double r2 = std::abs(ratio(1e4) - 1.0);
            double r3 = std::abs(ratio(1e5) - 1.0);
            CHECK(r2 < r1);
            CHECK(r3 < r2);
            CHECK(r3 < 0.02);
        }
    }
}

TEST_CASE("shifted sign-sum equals the residue bookkeeping") {
    for (int q : {2, 4}) {
        int D = q == 2 ? 18 : 9;
        double lq = std::log(static_cast<double>(q));
        double d = shifted_sum_direct(0.05 / lq, 0.03 / lq, q, 3, D);
        double r = shifted_sum_residue(0.05 / lq, 0.03 / lq, q, 3, D);
        CHECK(std::abs(d - r) <= 1e-7 * std::abs(d));
    }
}

TEST_CASE("ratios factors: named identities") {
    for (int q : {2, 4}) {
        Complex r(0.1, 0.0);
        // A(r;r) = 1 exactly
        CHECK(ratios_A({r}, {r}, q, 30).real() == doctest::Approx(1.0).epsilon(1e-14));
        // A(-r;r) telescopes to zeta_A(2)/zeta_A(2-2r)
        Complex am = ratios_A({-r}, {r}, q, 40);
        double closed = ((1.0 - std::pow(static_cast<double>(q), -0.8)) / (1.0 - 1.0 / q));
        CHECK(am.real() == doctest::Approx(closed).epsilon(1e-9));
        CHECK(std::abs(am.imag()) < 1e-12);
        // A'(r;r) against a Richardson finite difference of the evaluator
        auto fd = [&](double h) {
            return (ratios_A({Complex(0.1 + h, 0)}, {r}, q, 40).real() -
                    ratios_A({Complex(0.1 - h, 0)}, {r}, q, 40).real()) /
                   (2.0 * h);
        };
        double f1 = fd(2e-3), f2 = fd(1e-3);
        double rich = (4.0 * f2 - f1) / 3.0;
        CHECK(std::abs(rich - ratios_A_prime_rr(r, q, 40).real()) < 1e-6);
        // Y is the zeta ratio
        Complex y = ratios_Y({Complex(0.2, 0)}, {Complex(0.1, 0)}, q);
        Complex want = zeta_A(1.4, q) / zeta_A(1.3, q);
        CHECK(std::abs(y - want) < 1e-12);
    }
}

TEST_CASE("per-prime ratios factor equals the raw tuple sum times zeta cancellations") {
    // raw-sum oracle: the per-prime factor as a sum over exponent tuples
    // (a_k >= 0, c_q in {0,1}, mu(P^c) weights, total even and positive).
    for (int q : {2, 4}) {
        std::vector<Complex> alphas = {Complex(0.11, 0.02), Complex(0.21, -0.03)};
        std::vector<Complex> gammas = {Complex(0.17, 0.01)};
        for (int d = 1; d <= 3; ++d) {
            double p = std::pow(static_cast<double>(q), d);
            auto ppow = [&](Complex e) { return std::exp(-e * std::log(p)); };
            Complex raw = 0.0;
            const int amax = 80;
            for (int a1 = 0; a1 <= amax; ++a1)
                for (int a2 = 0; a2 <= amax - a1; ++a2)
                    for (int c1 = 0; c1 <= 1; ++c1) {
                        int total = a1 + a2 + c1;
                        if (total == 0 || total % 2) continue;
                        double mu = c1 ? -1.0 : 1.0;
                        raw += mu * ppow(static_cast<double>(a1) * (0.5 + alphas[0]) +
                                         static_cast<double>(a2) * (0.5 + alphas[1]) +
                                         static_cast<double>(c1) * (0.5 + gammas[0]));
                    }
            Complex gp = 1.0 + raw / (1.0 + 1.0 / p);
            // zeta cancellations for K=2, Q=1
            Complex zc = 1.0;
            for (size_t j = 0; j < alphas.size(); ++j)
                for (size_t k = j; k < alphas.size(); ++k) zc *= 1.0 - ppow(1.0 + alphas[j] + alphas[k]);
            for (const auto& al : alphas)
                for (const auto& ga : gammas) zc /= 1.0 - ppow(1.0 + al + ga);
            Complex a_factor_expected = gp * zc;
            // the evaluator's per-prime factor, extracted by a one-degree ratio
            Complex full_d = ratios_A(alphas, gammas, q, d);
            Complex full_dm1 = d == 1 ? Complex(1.0, 0.0) : ratios_A(alphas, gammas, q, d - 1);
            double count = algebra::irreducible_count_double(q, d);
            Complex factor_d = std::exp(std::log(full_d / full_dm1) / count);
            CHECK(std::abs(factor_d - a_factor_expected) < 1e-8);
        }
    }
}

TEST_CASE("ratio prediction is exactly the family size at alpha = gamma") {
    for (int q : {2, 4})
        for (int g : {2, 3}) {
            double v = ratio_prediction(0.17, 0.17, q, g, 30);
            CHECK(v == doctest::Approx(family_size_I(q, g + 1)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(ratio_prediction(0.6, 0.3, 4, 2, 10), std::invalid_argument);  // outside convergence
}

TEST_CASE("log-derivative prediction: domain and finiteness near the boundary") {
    CHECK(std::isfinite(logderiv_prediction(0.249, 4, 3, 30)));
    CHECK_THROWS_AS(logderiv_prediction(0.6, 4, 3, 30), std::invalid_argument);
    CHECK_THROWS_AS(logderiv_prediction(-0.1, 4, 3, 30), std::invalid_argument);
}

TEST_CASE("density prediction with h = 1 approaches the zero count") {
    // the integrand's X'/X sign is pinned by this budget: constants alone
    // give exactly 2g #I per period
    for (int g : {2, 3}) {
        double pred = density_prediction([](double) { return 1.0; }, 4, g, 40, 64);
        double count = 2.0 * g * family_size_I(4, g + 1);
        CHECK(std::abs(pred - count) / count < 5e-3);
    }
    // quadrature is spectrally exact: panel count does not matter
    auto h = [](double t) { return fejer_kernel(4, 3, t); };
    double a = density_prediction(h, 4, 2, 40, 64);
    double b = density_prediction(h, 4, 2, 40, 256);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("density integrand is finite through t = 0") {
    // nodes straddle 0 arbitrarily closely as panel counts grow; identical
    // results mean the 1/t pieces cancel as they should
    auto h = [](double t) { return fejer_kernel(2, 2, t); };
    double a = density_prediction(h, 2, 2, 30, 63);
    double b = density_prediction(h, 2, 2, 30, 257);
    CHECK(std::isfinite(a));
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("scaled density limit of the Fejer-type kernel is exactly one half") {
    auto sinc2 = [](double t) {
        if (std::abs(t) < 1e-12) return 1.0;
        double s = std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
        return s * s;
    };
    double v = scaled_density_limit(sinc2, 2.0e5, 0.5);
    CHECK(std::abs(v - 0.5) < 2e-6);
    CHECK(scaled_density_limit([](double) { return 0.0; }, 100.0, 0.5) == 0.0);
    // odd part contributes nothing: an even h equals its symmetrization
    auto skew = [](double t) { return std::exp(-t * t) * (1.0 + 0.5 * std::sin(3.0 * t)); };
    auto even = [](double t) { return std::exp(-t * t); };
    CHECK(scaled_density_limit(skew, 50.0, 0.25) ==
          doctest::Approx(scaled_density_limit(even, 50.0, 0.25)).epsilon(1e-10));
}

TEST_CASE("A(-r;r) equals its displayed per-prime product") {
    // prod over P of (1 - 1/|P|)^{-1} (1 - 1/((|P|+1)|P|^{1-2r}) - 1/(|P|+1))
    for (int q : {2, 4}) {
        double r = 0.12;
        long double logsum = 0.0L;
        for (int d = 1; d <= 40; ++d) {
            long double p = powl(static_cast<long double>(q), static_cast<long double>(d));
            long double f = (1.0L - 1.0L / ((p + 1.0L) * powl(p, 1.0L - 2.0L * r)) - 1.0L / (p + 1.0L)) /
                            (1.0L - 1.0L / p);
            logsum += static_cast<long double>(algebra::irreducible_count_double(q, d)) * logl(f);
        }
        double displayed = static_cast<double>(expl(logsum));
        double evaluator = ratios_A({Complex(-r, 0)}, {Complex(r, 0)}, q, 40).real();
        CHECK(evaluator == doctest::Approx(displayed).epsilon(1e-10));
    }
}

TEST_CASE("euler products are reproducible bit for bit") {
    for (int q : {2, 4}) {
        auto a = euler_P(q, 18), b = euler_P(q, 18);
        CHECK(a.p1.value == b.p1.value);
        CHECK(a.logderiv.value == b.logderiv.value);
        CHECK(A_closed(3, q, 14).value == A_closed(3, q, 14).value);
        Complex r1 = ratios_A({Complex(-0.2, 0.05)}, {Complex(0.15, 0.0)}, q, 40);
        Complex r2 = ratios_A({Complex(-0.2, 0.05)}, {Complex(0.15, 0.0)}, q, 40);
        CHECK(r1 == r2);
    }
}

TEST_CASE("euler product cache stores per-degree hexfloat lines") {
    namespace fsys = std::filesystem;
    std::string dir = (fsys::temp_directory_path() / "eclab_test_euler").string();
    fsys::remove_all(dir);
    std::string saved = algebra::cache_dir();
    algebra::set_cache_dir(dir);
    auto term = [](int d) { return -1.0 / (d * d); };
    auto logs1 = euler_degree_logs(2, "testprod", 6, term);
    auto logs2 = euler_degree_logs(2, "testprod", 10, [](int) { return 1e9; });  // must reuse lines 1..6
    algebra::set_cache_dir(saved);
    CHECK(logs1.size() == 6);
    CHECK(logs2.size() == 10);
    for (int i = 0; i < 6; ++i) CHECK(logs2[static_cast<size_t>(i)] == logs1[static_cast<size_t>(i)]);
    CHECK(logs2[7] == 1e9);
    std::ifstream in(dir + "/euler_q2_testprod.txt");
    REQUIRE(static_cast<bool>(in));
    int d;
    double v;
    std::string line;
    std::getline(in, line);
    CHECK(std::sscanf(line.c_str(), "%d %la", &d, &v) == 2);
    CHECK(d == 1);
    CHECK(v == term(1));
    fsys::remove_all(dir);
}

TEST_CASE("log-derivative prediction tracks the family sum with shrinking deviation") {
    const auto& fs = FieldSpec::get(4);
    const double lq = std::log(4.0);
    auto family_sum = [&](int n, double r) {
        double total = 0.0;
        family::for_each_I(fs, n, [&](const family::Discriminant& u) {
            auto L = lfunction::l_star(fs, u);
            double z = std::exp(-(0.5 + r) * lq);
            double num = 0.0, den = 0.0;
            for (size_t j = L.c.size(); j-- > 1;) num = num * z + static_cast<double>(j) * static_cast<double>(L.c[j]);
            for (size_t j = L.c.size(); j-- > 0;) den = den * z + static_cast<double>(L.c[j]);
            total += -lq * z * num / den;
        });
        return total;
    };
    for (double r : {0.12, 0.2}) {
        double d2 = std::abs(family_sum(3, r) - logderiv_prediction(r, 4, 2, 40)) /
                    std::abs(family_sum(3, r));
        double d3 = std::abs(family_sum(4, r) - logderiv_prediction(r, 4, 3, 40)) /
                    std::abs(family_sum(4, r));
        CHECK(d3 < d2);
    }
}

TEST_CASE("first-moment closed main terms have the stated shape") {
    // F carries zeta_A(1/2) (negative), F' carries 1/(1 + sqrt q)
    int q = 4, g = 3, D = 9;
    auto ep = euler_P(q, D);
    double base = ep.p1.value * (1.0 - 1.0 / q) * std::pow(4.0, 2.0 * g + 2.0);
    double common = g + 1 + 2.0 / std::log(4.0) * ep.logderiv.value;
    CHECK(first_moment_main_F(q, g, D) == doctest::Approx(base * (common - 1.0)));
    CHECK(first_moment_main_Fprime(q, g, D) == doctest::Approx(base * (common + 1.0 / 3.0)));
}

TEST_SUITE_END();
