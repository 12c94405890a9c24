#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace eclab::series {

/// Polynomial in the formal variable x over doubles; c[i] is the x^i
/// coefficient.  Empty vector = 0.
struct XPoly {
    std::vector<double> c;

    XPoly() = default;
    explicit XPoly(double v) {
        if (v != 0.0) c.assign(1, v);
    }
    static XPoly monomial(double v, int deg) {
        XPoly p;
        if (v != 0.0) {
            p.c.assign(static_cast<size_t>(deg) + 1, 0.0);
            p.c[static_cast<size_t>(deg)] = v;
        }
        return p;
    }

    bool is_zero() const {
        for (double v : c)
            if (v != 0.0) return false;
        return true;
    }
    int degree() const;  // -1 for zero
    double coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : 0.0; }
    double eval(double x) const;

    XPoly& operator+=(const XPoly& o);
    XPoly operator*(double s) const;
};

XPoly xpoly_mul(const XPoly& a, const XPoly& b, int xcap);

/// Truncation shape of a jet: k variables, per-variable exponents <= ord,
/// total degree <= tord, x-degree of coefficients <= xcap.
struct Shape {
    int k = 1;
    int ord = 1;
    int tord = 0;  // 0 means k*ord (no extra total cap)
    int xcap = 0;

    int total_cap() const { return tord > 0 ? tord : k * ord; }
    bool operator==(const Shape& o) const {
        return k == o.k && ord == o.ord && total_cap() == o.total_cap() && xcap == o.xcap;
    }
};

/// Dense truncated multivariate power series (Taylor only; all pole
/// structure is handled upstream) whose coefficients are XPoly values.
struct MultiSeries {
    Shape shape;
    std::vector<XPoly> tab;  // (ord+1)^k entries, index = sum e_i (ord+1)^i

    static MultiSeries zero(const Shape& sh);
    static MultiSeries constant(const Shape& sh, double v);
    static MultiSeries constant(const Shape& sh, const XPoly& v);
    static MultiSeries variable(const Shape& sh, int var);

    size_t cells() const { return tab.size(); }
    size_t index(const std::vector<int>& exps) const;
    const XPoly& at(const std::vector<int>& exps) const { return tab[index(exps)]; }
    XPoly& at(const std::vector<int>& exps) { return tab[index(exps)]; }
};

MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b);
MultiSeries ms_sub(const MultiSeries& a, const MultiSeries& b);
MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b);
MultiSeries ms_scale(const MultiSeries& a, double s);
MultiSeries ms_scale_xpoly(const MultiSeries& a, const XPoly& s);

/// exp of a series with zero constant term.
MultiSeries exp_series(const MultiSeries& a);
/// reciprocal of a series whose constant term is a nonzero scalar.
MultiSeries recip_series(const MultiSeries& a);

/// Taylor coefficients of s * zeta_A(1+s) = s / (1 - q^{-s}) at s = 0,
/// orders 0..order.  Leading values: 1/log q, 1/2, (log q)/12.
std::vector<double> zeta_shift_jet(int q, int order);

/// Univariate f placed on variable `var`, optionally with the variable
/// scaled by `lambda` (so the result is f(lambda * z_var)).
MultiSeries embed_univariate(const std::vector<double>& f, int var, const Shape& sh, double lambda = 1.0);

/// f(z_i + z_j) by binomial re-expansion; i == j gives f(2 z_i).
/// f must carry coefficients up to the shape's total cap.
MultiSeries compose_sum(const std::vector<double>& f, int i, int j, const Shape& sh);

/// Stored coefficient at the exponent tuple; throws when out of range.
XPoly extract_coeff(const MultiSeries& a, const std::vector<int>& exps);

/// Numeric evaluation at a point (requires scalar coefficients, xcap == 0).
std::complex<double> eval_at(const MultiSeries& a, const std::vector<std::complex<double>>& z);

}  // namespace eclab::series
