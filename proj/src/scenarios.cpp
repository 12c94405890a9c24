#include "eclab/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eclab/character.hpp"
#include "eclab/prediction.hpp"

namespace eclab::scenarios {

namespace {

using experiments::CompareParams;
using experiments::Report;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// 1. enumerated family counts match the closed cardinalities exactly
CriterionResult crit_cardinalities() {
    Check c;
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        for (int n = 1; n <= 4; ++n)
            for (auto which : {family::Set::B, family::Set::F, family::Set::Fprime, family::Set::I}) {
                uint64_t got = family::count(fs, which, n);
                uint64_t want = family::expected_count(fs, which, n);
                c.expect(got == want, "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                          " count " + std::to_string(got) + " != " + std::to_string(want));
            }
    }
    return {1, "", c.pass, c.detail.str(), {}, 0};
}

// 2. functional-equation symmetry, and completion agrees with brute force
CriterionResult crit_functional_equation() {
    Check c;
    const auto& fs = FieldSpec::get(2);
    for (int n = 1; n <= 4; ++n) {
        family::for_each_I(fs, n, [&](const family::Discriminant& u) {
            auto L = lfunction::l_star(fs, u);
            int g = L.g;
            long long qp = 1;
            for (int j = g + 1; j <= 2 * g; ++j) {
                qp *= 2;
                if (L.c[static_cast<size_t>(j)] != qp * L.c[static_cast<size_t>(2 * g - j)])
                    c.expect(false, "symmetry broken at n=" + std::to_string(n));
            }
            auto raw = lfunction::dirichlet_coeffs(fs, u, 2 * g);
            for (int j = 0; j <= 2 * g; ++j)
                if (raw[static_cast<size_t>(j)] != L.c[static_cast<size_t>(j)])
                    c.expect(false, "completion disagrees with brute force at n=" + std::to_string(n));
        });
    }
    return {2, "", c.pass, c.detail.str(), {}, 0};
}

// 3. trivial zeros of the real and inert series, exactly
CriterionResult crit_trivial_zeros() {
    Check c;
    const auto& fs = FieldSpec::get(2);
    for (int n = 1; n <= 3; ++n) {
        family::for_each_F(fs, n, [&](const family::Discriminant& u) {
            auto raw = lfunction::dirichlet_coeffs(fs, u, 2 * u.genus() + 1);
            long long s = 0;
            for (long long v : raw) s += v;
            c.expect(s == 0, "real series not vanishing at z=1, n=" + std::to_string(n));
        });
        family::for_each_Fprime(fs, n, [&](const family::Discriminant& u) {
            auto raw = lfunction::dirichlet_coeffs(fs, u, 2 * u.genus() + 1);
            long long s = 0;
            for (size_t j = 0; j < raw.size(); ++j) s += (j % 2 ? -raw[j] : raw[j]);
            c.expect(s == 0, "inert series not vanishing at z=-1, n=" + std::to_string(n));
        });
    }
    return {3, "", c.pass, c.detail.str(), {}, 0};
}

// 4. every zero sits on the circle |z| = q^{-1/2} to 1e-9
CriterionResult crit_rh_circle() {
    Check c;
    for (int q : {2, 4}) {
        const auto& fs = FieldSpec::get(q);
        double r = 1.0 / std::sqrt(static_cast<double>(q));
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n)
            family::for_each_I(fs, n, [&](const family::Discriminant& u) {
                auto zs = lfunction::zeros(lfunction::l_star(fs, u));
                for (const auto& z : zs.z) worst = std::max(worst, std::abs(std::abs(z) - r));
            });
        c.expect(worst < 1e-9, "q=" + std::to_string(q) + " worst circle deviation " + fmt(worst));
        c.detail << (c.detail.tellp() > 0 ? "; " : "") << "q=" << q << " worst " << fmt(worst);
    }
    return {4, "", c.pass, c.detail.str(), {}, 0};
}

// 5. first-moment deviation trends over g in {2,3,4} at q=4, all three families
CriterionResult crit_first_moment_trend() {
    Check c;
    std::vector<Report> reports;
    for (const char* kind : {"moment", "moment_F", "moment_Fprime"}) {
        CompareParams p;
        p.q = 4;
        p.k = 1;
        std::vector<double> dev;
        for (int g : {2, 3, 4}) {
            p.n = g + 1;
            Report r = experiments::compare(kind, p);
            dev.push_back(r.relative_deviation);
            reports.push_back(r);
        }
        c.expect(dev[1] <= dev[0] && dev[2] <= dev[1],
                 std::string(kind) + " deviations not non-increasing: " + fmt(dev[0]) + ", " +
                     fmt(dev[1]) + ", " + fmt(dev[2]));
    }
    return {5, "", c.pass, c.detail.str(), reports, 0};
}

// 6. residue engine vs the closed first-moment polynomial, 1e-8 per coefficient
CriterionResult crit_q1_closed() {
    Check c;
    for (int q : {2, 4}) {
        int D = experiments::default_moment_degree(q);
        auto closed = prediction::q1_closed(q, D);
        auto Q1 = prediction::q_k(1, q, D);
        for (int i = 0; i <= 1; ++i) {
            double diff = std::abs(Q1.poly.coeff(i) - closed.coeff(i));
            c.expect(diff <= 1e-8 * std::abs(closed.coeff(i)),
                     "q=" + std::to_string(q) + " coeff " + std::to_string(i) + " off by " + fmt(diff));
        }
    }
    return {6, "", c.pass, c.detail.str(), {}, 0};
}

// 7. Q_2 and Q_3 cross-assembly from A-jet partial derivatives, 1e-6 relative
CriterionResult crit_q2_q3_assembly() {
    Check c;
    for (int q : {2, 4}) {
        int D = experiments::default_moment_degree(q);
        auto jet2 = prediction::A_jet(2, q, D, 3, 3);
        auto Q2 = prediction::q_k(2, q, D);
        auto P2 = prediction::q2_from_partials(q, jet2);
        for (int i = 0; i <= 3; ++i)
            c.expect(std::abs(Q2.poly.coeff(i) - P2.coeff(i)) <= 1e-6 * std::abs(P2.coeff(i)),
                     "Q2 q=" + std::to_string(q) + " x^" + std::to_string(i));
        auto jet3 = prediction::A_jet(3, q, D, 5, 6);
        auto Q3 = prediction::q_k(3, q, D);
        auto P3 = prediction::q3_from_partials(q, jet3);
        for (int i = 0; i <= 6; ++i)
            c.expect(std::abs(Q3.poly.coeff(i) - P3.coeff(i)) <= 1e-6 * std::abs(P3.coeff(i)),
                     "Q3 q=" + std::to_string(q) + " x^" + std::to_string(i));
    }
    return {7, "", c.pass, c.detail.str(), {}, 0};
}

// 8. the exact leading constants for k = 1..5
CriterionResult crit_leading_constants() {
    Check c;
    const std::pair<int, Rat> want[] = {
        {1, Rat(2)}, {2, Rat(2, 3)}, {3, Rat(2, 45)}, {4, Rat(2, 4725)}, {5, Rat(2, 4465125)}};
    for (const auto& [k, v] : want)
        c.expect(prediction::leading_constant(k) == v, "k=" + std::to_string(k));
    return {8, "", c.pass, c.detail.str(), {}, 0};
}

// 9. jet constant terms vs closed products, 1e-10, k in {2..5}
CriterionResult crit_euler_cross() {
    Check c;
    for (int q : {2, 4}) {
        int D = experiments::default_moment_degree(q);
        for (int k = 2; k <= 5; ++k) {
            auto cl = prediction::A_closed(k, q, D);
            auto jet = prediction::A_jet(k, q, D, 0, 0);
            double jv = series::extract_coeff(jet, std::vector<int>(static_cast<size_t>(k), 0)).coeff(0);
            double rel = std::abs(cl.value - jv) / std::abs(cl.value);
            c.expect(rel <= 1e-10,
                     "q=" + std::to_string(q) + " k=" + std::to_string(k) + " rel " + fmt(rel));
        }
    }
    return {9, "", c.pass, c.detail.str(), {}, 0};
}

// 10. sign-sum vs residue bookkeeping at small nonzero shifts, 1e-7
CriterionResult crit_contour_identity() {
    Check c;
    for (int q : {2, 4}) {
        int D = experiments::default_moment_degree(q);
        double lq = std::log(static_cast<double>(q));
        double a = prediction::shifted_sum_direct(0.05 / lq, 0.03 / lq, q, 3, D);
        double b = prediction::shifted_sum_residue(0.05 / lq, 0.03 / lq, q, 3, D);
        double rel = std::abs(a - b) / std::abs(a);
        c.expect(rel <= 1e-7, "q=" + std::to_string(q) + " rel " + fmt(rel));
        c.detail << (c.detail.tellp() > 0 ? "; " : "") << "q=" << q << " rel " << fmt(rel);
    }
    return {10, "", c.pass, c.detail.str(), {}, 0};
}

// 11. character averages drift to 2/3 (m = T^2) and 0 (m = T), q=2
CriterionResult crit_char_average_trend() {
    Check c;
    std::vector<Report> reports;
    std::vector<double> dsq, dns;
    for (int n : {2, 3, 4}) {
        CompareParams p;
        p.q = 2;
        p.n = n;
        p.m = "001";  // T^2
        Report r = experiments::compare("char_average", p);
        dsq.push_back(std::abs(r.empirical - 2.0 / 3.0));
        reports.push_back(r);
        p.m = "01";  // T
        Report r2 = experiments::compare("char_average", p);
        dns.push_back(std::abs(r2.empirical));
        reports.push_back(r2);
    }
    c.expect(dsq[1] <= dsq[0] && dsq[2] <= dsq[1],
             "square deviations not non-increasing: " + fmt(dsq[0]) + ", " + fmt(dsq[1]) + ", " + fmt(dsq[2]));
    c.expect(dns[1] <= dns[0] && dns[2] <= dns[1],
             "non-square deviations not non-increasing");
    return {11, "", c.pass, c.detail.str(), reports, 0};
}

// 12. ratios: exact consistency at alpha = gamma, trend at (0.3, 0.24), q=4
CriterionResult crit_ratios() {
    Check c;
    std::vector<Report> reports;
    for (int g : {2, 3}) {
        auto emp = experiments::empirical_ratio(0.3, 0.3, 4, g + 1);
        double pred = prediction::ratio_prediction(0.3, 0.3, 4, g, experiments::kRatiosDegree);
        double fam = prediction::family_size_I(4, g + 1);
        c.expect(emp.value == fam && pred == fam,
                 "alpha=gamma not exact at g=" + std::to_string(g) + ": emp " + fmt(emp.value) +
                     " pred " + fmt(pred) + " fam " + fmt(fam));
    }
    std::vector<double> dev;
    for (int g : {2, 3, 4}) {
        CompareParams p;
        p.q = 4;
        p.n = g + 1;
        p.alpha = 0.3;
        p.gamma = 0.24;
        Report r = experiments::compare("ratio", p);
        dev.push_back(r.relative_deviation);
        reports.push_back(r);
    }
    c.expect(dev[1] <= dev[0] && dev[2] <= dev[1],
             "ratio deviations not non-increasing: " + fmt(dev[0]) + ", " + fmt(dev[1]) + ", " + fmt(dev[2]));
    return {12, "", c.pass, c.detail.str(), reports, 0};
}

// 13. one-level density trend at q=4 with a Fejer kernel, plus the scaled
//     limit quadrature against the exact 1/2
CriterionResult crit_density() {
    Check c;
    std::vector<Report> reports;
    std::vector<double> dev;
    for (int g : {2, 3, 4}) {
        CompareParams p;
        p.q = 4;
        p.n = g + 1;
        p.h = "fejer3";
        Report r = experiments::compare("density", p);
        dev.push_back(r.relative_deviation);
        reports.push_back(r);
    }
    c.expect(dev[1] <= dev[0] && dev[2] <= dev[1],
             "density deviations not non-increasing: " + fmt(dev[0]) + ", " + fmt(dev[1]) + ", " +
                 fmt(dev[2]));
    auto sinc2 = [](double t) {
        if (std::abs(t) < 1e-12) return 1.0;
        double s = std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
        return s * s;
    };
    double v = prediction::scaled_density_limit(sinc2);
    c.expect(std::abs(v - 0.5) <= 1e-6, "scaled limit " + fmt(v) + " not within 1e-6 of 0.5");
    c.detail << (c.detail.tellp() > 0 ? "; " : "") << "scaled limit " << fmt(v);
    return {13, "", c.pass, c.detail.str(), reports, 0};
}

// 14. the phi sum against an independent coprime-counting oracle
CriterionResult crit_phi_sum() {
    Check c;
    const auto& fs = FieldSpec::get(2);
    Poly T = Poly::gen();
    Poly TT1 = poly_mul(fs, T, poly_add(T, Poly::constant(1)));
    std::vector<Poly> Ls = {Poly::constant(1), T, TT1};
    for (int n = 1; n <= 6; ++n)
        for (const Poly& L : Ls) {
            // oracle: count coprime residues directly, never through factorize
            uint64_t oracle = 0;
            algebra::for_each_monic(fs, n, [&](const Poly& f) {
                if (L.degree() >= 1 && poly_gcd(fs, f, L).degree() != 0) return;
                uint64_t tot = 1;
                for (int i = 0; i < n; ++i) tot *= 2;
                for (uint64_t rnk = 0; rnk < tot; ++rnk) {
                    Poly h = residue_from_rank(fs, n, rnk);
                    if (!h.is_zero() && poly_gcd(fs, h, f).degree() == 0) ++oracle;
                }
            });
            uint64_t got = algebra::sum_phi_coprime(fs, n, L);
            c.expect(got == oracle, "n=" + std::to_string(n) + " L=" + poly_to_string(fs, L) +
                                        ": " + std::to_string(got) + " != " + std::to_string(oracle));
        }
    return {14, "", c.pass, c.detail.str(), {}, 0};
}

}  // namespace

const std::vector<std::string>& names() {
    static const std::vector<std::string> kNames = {
        "cardinalities",        "functional_equation", "trivial_zeros",
        "rh_circle",            "first_moment_trend",  "q1_residue_vs_closed",
        "q2_q3_assembly",       "leading_constants",   "euler_product_cross_validation",
        "contour_identity",     "char_average_trend",  "ratios_consistency",
        "one_level_density",    "phi_sum_oracle"};
    return kNames;
}

CriterionResult run(int id) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = crit_cardinalities(); break;
        case 2: r = crit_functional_equation(); break;
        case 3: r = crit_trivial_zeros(); break;
        case 4: r = crit_rh_circle(); break;
        case 5: r = crit_first_moment_trend(); break;
        case 6: r = crit_q1_closed(); break;
        case 7: r = crit_q2_q3_assembly(); break;
        case 8: r = crit_leading_constants(); break;
        case 9: r = crit_euler_cross(); break;
        case 10: r = crit_contour_identity(); break;
        case 11: r = crit_char_average_trend(); break;
        case 12: r = crit_ratios(); break;
        case 13: r = crit_density(); break;
        case 14: r = crit_phi_sum(); break;
        default: throw std::invalid_argument("scenario id out of range (1..14)");
    }
    r.name = names()[static_cast<size_t>(id - 1)];
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

CriterionResult run(const std::string& name) {
    const auto& ns = names();
    for (size_t i = 0; i < ns.size(); ++i)
        if (ns[i] == name) return run(static_cast<int>(i) + 1);
    throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace eclab::scenarios
