#include "eclab/series.hpp"

#include <cmath>
#include <stdexcept>

namespace eclab::series {

int XPoly::degree() const {
    for (size_t i = c.size(); i-- > 0;)
        if (c[i] != 0.0) return static_cast<int>(i);
    return -1;
}

double XPoly::eval(double x) const {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

XPoly& XPoly::operator+=(const XPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0.0);
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
}

XPoly XPoly::operator*(double s) const {
    XPoly r = *this;
    for (double& v : r.c) v *= s;
    return r;
}

XPoly xpoly_mul(const XPoly& a, const XPoly& b, int xcap) {
    XPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    int deg = std::min(static_cast<int>(a.c.size() + b.c.size()) - 2, xcap);
    if (deg < 0) return r;
    r.c.assign(static_cast<size_t>(deg) + 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0.0) continue;
        for (size_t j = 0; i + j <= static_cast<size_t>(deg) && j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

namespace {

size_t cell_count(const Shape& sh) {
    size_t n = 1;
    for (int i = 0; i < sh.k; ++i) n *= static_cast<size_t>(sh.ord) + 1;
    return n;
}

struct ExpTable {
    std::vector<std::vector<int>> exps;  // per cell
    std::vector<int> total;
};

ExpTable make_exp_table(const Shape& sh) {
    ExpTable t;
    size_t n = cell_count(sh);
    t.exps.assign(n, std::vector<int>(static_cast<size_t>(sh.k), 0));
    t.total.assign(n, 0);
    for (size_t idx = 0; idx < n; ++idx) {
        size_t rest = idx;
        int tot = 0;
        for (int v = 0; v < sh.k; ++v) {
            int e = static_cast<int>(rest % (static_cast<size_t>(sh.ord) + 1));
            rest /= static_cast<size_t>(sh.ord) + 1;
            t.exps[idx][static_cast<size_t>(v)] = e;
            tot += e;
        }
        t.total[idx] = tot;
    }
    return t;
}

void check_shapes(const MultiSeries& a, const MultiSeries& b) {
    if (!(a.shape == b.shape)) throw std::invalid_argument("MultiSeries: shape mismatch");
}

}  // namespace

MultiSeries MultiSeries::zero(const Shape& sh) {
    MultiSeries m;
    m.shape = sh;
    m.tab.assign(cell_count(sh), XPoly{});
    return m;
}

MultiSeries MultiSeries::constant(const Shape& sh, double v) {
    MultiSeries m = zero(sh);
    m.tab[0] = XPoly(v);
    return m;
}

MultiSeries MultiSeries::constant(const Shape& sh, const XPoly& v) {
    MultiSeries m = zero(sh);
    m.tab[0] = v;
    return m;
}

MultiSeries MultiSeries::variable(const Shape& sh, int var) {
    if (var < 0 || var >= sh.k) throw std::invalid_argument("MultiSeries::variable: bad index");
    MultiSeries m = zero(sh);
    if (sh.ord >= 1 && sh.total_cap() >= 1) {
        size_t stride = 1;
        for (int i = 0; i < var; ++i) stride *= static_cast<size_t>(sh.ord) + 1;
        m.tab[stride] = XPoly(1.0);
    }
    return m;
}

size_t MultiSeries::index(const std::vector<int>& exps) const {
    if (static_cast<int>(exps.size()) != shape.k) throw std::invalid_argument("MultiSeries::index: arity mismatch");
    size_t idx = 0, stride = 1;
    int tot = 0;
    for (int v = 0; v < shape.k; ++v) {
        int e = exps[static_cast<size_t>(v)];
        if (e < 0 || e > shape.ord) throw std::out_of_range("MultiSeries::index: exponent outside truncation");
        tot += e;
        idx += static_cast<size_t>(e) * stride;
        stride *= static_cast<size_t>(shape.ord) + 1;
    }
    if (tot > shape.total_cap()) throw std::out_of_range("MultiSeries::index: total degree outside truncation");
    return idx;
}

MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b) {
    check_shapes(a, b);
    MultiSeries r = a;
    for (size_t i = 0; i < r.tab.size(); ++i) r.tab[i] += b.tab[i];
    return r;
}

MultiSeries ms_sub(const MultiSeries& a, const MultiSeries& b) { return ms_add(a, ms_scale(b, -1.0)); }

MultiSeries ms_scale(const MultiSeries& a, double s) {
    MultiSeries r = a;
    for (auto& x : r.tab) x = x * s;
    return r;
}

MultiSeries ms_scale_xpoly(const MultiSeries& a, const XPoly& s) {
    MultiSeries r = MultiSeries::zero(a.shape);
    for (size_t i = 0; i < a.tab.size(); ++i)
        if (!a.tab[i].is_zero()) r.tab[i] = xpoly_mul(a.tab[i], s, a.shape.xcap);
    return r;
}

MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b) {
    check_shapes(a, b);
    const Shape& sh = a.shape;
    ExpTable t = make_exp_table(sh);
    MultiSeries r = MultiSeries::zero(sh);
    const int tcap = sh.total_cap();

    std::vector<size_t> nza, nzb;
    for (size_t i = 0; i < a.tab.size(); ++i)
        if (t.total[i] <= tcap && !a.tab[i].is_zero()) nza.push_back(i);
    for (size_t i = 0; i < b.tab.size(); ++i)
        if (t.total[i] <= tcap && !b.tab[i].is_zero()) nzb.push_back(i);

    for (size_t ia : nza) {
        const auto& ea = t.exps[ia];
        int ta = t.total[ia];
        for (size_t ib : nzb) {
            if (ta + t.total[ib] > tcap) continue;
            const auto& eb = t.exps[ib];
            bool ok = true;
            for (int v = 0; v < sh.k; ++v)
                if (ea[static_cast<size_t>(v)] + eb[static_cast<size_t>(v)] > sh.ord) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            r.tab[ia + ib] += xpoly_mul(a.tab[ia], b.tab[ib], sh.xcap);
        }
    }
    return r;
}

MultiSeries exp_series(const MultiSeries& a) {
    if (!a.tab[0].is_zero()) throw std::invalid_argument("exp_series: nonzero constant term");
    const int terms = a.shape.total_cap();
    // Horner over 1 + a (1 + a/2 (1 + ... (1 + a/terms)))
    MultiSeries r = MultiSeries::constant(a.shape, 1.0);
    for (int j = terms; j >= 1; --j) {
        r = ms_scale(r, 1.0 / j);
        r = ms_mul(a, r);
        r.tab[0] += XPoly(1.0);
    }
    return r;
}

MultiSeries recip_series(const MultiSeries& a) {
    const XPoly& c0 = a.tab[0];
    if (c0.degree() != 0) throw std::invalid_argument("recip_series: constant term must be a nonzero scalar");
    double c = c0.c[0];
    MultiSeries u = ms_scale(a, -1.0 / c);
    u.tab[0] += XPoly(1.0);  // u = 1 - a/c has zero constant term
    const int terms = a.shape.total_cap();
    MultiSeries r = MultiSeries::constant(a.shape, 1.0);
    for (int j = terms; j >= 1; --j) {
        r = ms_mul(u, r);
        r.tab[0] += XPoly(1.0);
    }
    return ms_scale(r, 1.0 / c);
}

std::vector<double> zeta_shift_jet(int q, int order) {
    if (order < 0) throw std::invalid_argument("zeta_shift_jet: order >= 0 required");
    const double lq = std::log(static_cast<double>(q));
    // (1 - q^{-s})/s = lq * sum_{j>=0} (-lq)^j s^j / (j+1)!
    std::vector<double> den(static_cast<size_t>(order) + 1);
    double pw = lq;
    double fact = 1.0;
    for (int j = 0; j <= order; ++j) {
        fact *= (j + 1);
        den[static_cast<size_t>(j)] = pw / fact;
        pw *= -lq;
    }
    std::vector<double> h(static_cast<size_t>(order) + 1, 0.0);
    h[0] = 1.0 / den[0];
    for (int n = 1; n <= order; ++n) {
        double s = 0.0;
        for (int i = 1; i <= n; ++i) s += den[static_cast<size_t>(i)] * h[static_cast<size_t>(n - i)];
        h[static_cast<size_t>(n)] = -s / den[0];
    }
    return h;
}

MultiSeries embed_univariate(const std::vector<double>& f, int var, const Shape& sh, double lambda) {
    MultiSeries r = MultiSeries::zero(sh);
    size_t stride = 1;
    for (int i = 0; i < var; ++i) stride *= static_cast<size_t>(sh.ord) + 1;
    int emax = std::min<int>({sh.ord, sh.total_cap(), static_cast<int>(f.size()) - 1});
    double lp = 1.0;
    for (int e = 0; e <= emax; ++e) {
        double v = f[static_cast<size_t>(e)] * lp;
        if (v != 0.0) r.tab[stride * static_cast<size_t>(e)] = XPoly(v);
        lp *= lambda;
    }
    return r;
}

MultiSeries compose_sum(const std::vector<double>& f, int i, int j, const Shape& sh) {
    if (i == j) return embed_univariate(f, i, sh, 2.0);
    MultiSeries r = MultiSeries::zero(sh);
    std::vector<int> e(static_cast<size_t>(sh.k), 0);
    int nmax = std::min(static_cast<int>(f.size()) - 1, sh.total_cap());
    for (int n = 0; n <= nmax; ++n) {
        double fn = f[static_cast<size_t>(n)];
        if (fn == 0.0) continue;
        double binom = 1.0;  // C(n, m)
        for (int m = 0; m <= n; ++m) {
            if (m <= sh.ord && n - m <= sh.ord) {
                e[static_cast<size_t>(i)] = m;
                e[static_cast<size_t>(j)] = n - m;
                r.at(e) += XPoly(fn * binom);
            }
            binom = binom * (n - m) / (m + 1);
        }
        e[static_cast<size_t>(i)] = 0;
        e[static_cast<size_t>(j)] = 0;
    }
    return r;
}

XPoly extract_coeff(const MultiSeries& a, const std::vector<int>& exps) { return a.tab[a.index(exps)]; }

std::complex<double> eval_at(const MultiSeries& a, const std::vector<std::complex<double>>& z) {
    if (static_cast<int>(z.size()) != a.shape.k) throw std::invalid_argument("eval_at: arity mismatch");
    if (a.shape.xcap != 0) throw std::invalid_argument("eval_at: coefficients carry the formal variable");
    ExpTable t = make_exp_table(a.shape);
    std::complex<double> acc = 0.0;
    for (size_t idx = 0; idx < a.tab.size(); ++idx) {
        if (a.tab[idx].is_zero() || t.total[idx] > a.shape.total_cap()) continue;
        std::complex<double> term = a.tab[idx].c[0];
        for (int v = 0; v < a.shape.k; ++v)
            for (int e = 0; e < t.exps[idx][static_cast<size_t>(v)]; ++e) term *= z[static_cast<size_t>(v)];
        acc += term;
    }
    return acc;
}

}  // namespace eclab::series
