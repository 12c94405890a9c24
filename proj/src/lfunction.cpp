#include "eclab/lfunction.hpp"

#include "eclab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eclab::lfunction {

std::vector<long long> dirichlet_coeffs(const FieldSpec& fs, const family::Discriminant& u, int N) {
    if (N < 0) throw std::invalid_argument("dirichlet_coeffs: N >= 0 required");
    std::vector<long long> c(static_cast<size_t>(N) + 1, 0);
    c[0] = 1;
    for (int d = 1; d <= N; ++d) {
        long long total = 0;
        algebra::for_each_monic(fs, d, [&](const Poly& f) { total += character::chi(fs, u, f); });
        c[d] = total;
    }
    return c;
}

namespace {

long long ipow(int q, int e) {
    long long v = 1;
    for (int i = 0; i < e; ++i) v *= q;
    return v;
}

/// Shared completion logic: raw[0..g] (ramified) or raw[0..g+1] (real /
/// inert, after trivial-zero division the overlap entry checks symmetry).
LPolynomial complete(const FieldSpec& fs, const family::Discriminant& u,
                     const std::vector<long long>& raw) {
    LPolynomial L;
    L.q = fs.q;
    L.g = u.genus();
    L.kind = u.kind;
    L.source_key = family::key(fs, u);
    const int g = L.g;
    L.c.assign(static_cast<size_t>(2 * g) + 1, 0);

    std::vector<long long> low;
    if (u.kind == family::Kind::ramified_imaginary) {
        low.assign(raw.begin(), raw.begin() + g + 1);
    } else {
        // divide the raw series by (1 - z) or (1 + z); in either case the
        // quotient satisfies a_n = raw_n -+ ... via a_n = raw_n + sign * a_{n-1}
        // with sign = +1 for real (1-z) and -1 for inert (1+z).
        long long sign = u.kind == family::Kind::real ? 1 : -1;
        low.assign(static_cast<size_t>(g) + 2, 0);
        long long prev = 0;
        for (int n = 0; n <= g + 1; ++n) {
            long long a = raw[n] + sign * prev;
            low[n] = a;
            prev = a;
        }
        // overlap consistency: a_{g+1} must equal q^{g+1-g} a_{g-1} = q a_{g-1}
        if (g >= 1 && low[g + 1] != static_cast<long long>(fs.q) * low[g - 1])
            throw std::logic_error("l_star: functional-equation symmetry violated on overlap");
        if (g == 0 && low[1] != 0)
            throw std::logic_error("l_star: genus-0 completed polynomial must be constant");
        low.resize(static_cast<size_t>(g) + 1);
    }
    for (int n = 0; n <= g; ++n) L.c[n] = low[n];
    for (int n = g + 1; n <= 2 * g; ++n) L.c[n] = ipow(fs.q, n - g) * low[2 * g - n];
    if (L.c[0] != 1) throw std::logic_error("l_star: constant coefficient must be 1");
    return L;
}

}  // namespace

LPolynomial l_star(const FieldSpec& fs, const family::Discriminant& u) {
    const int g = u.genus();
    int need = u.kind == family::Kind::ramified_imaginary ? g : g + 1;
    return complete(fs, u, dirichlet_coeffs(fs, u, need));
}

LPolynomial l_star_fast(const character::SymbolEngine& eng, const family::Discriminant& u,
                        int8_t* scratch) {
    const FieldSpec& fs = eng.field();
    const int g = u.genus();
    int need = u.kind == family::Kind::ramified_imaginary ? g : g + 1;
    if (need > eng.max_f_degree()) throw std::invalid_argument("l_star_fast: engine degree bound too small");
    eng.symbols(u, scratch);
    std::vector<long long> raw(static_cast<size_t>(need) + 1, 0);
    eng.dirichlet_coeffs(scratch, need, raw.data());
    return complete(fs, u, raw);
}

std::complex<double> evaluate_z(const LPolynomial& L, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (size_t i = L.c.size(); i-- > 0;) acc = acc * z + static_cast<double>(L.c[i]);
    return acc;
}

std::complex<double> evaluate(const LPolynomial& L, std::complex<double> s) {
    return evaluate_z(L, std::exp(-s * std::log(static_cast<double>(L.q))));
}

CentralValue central_value(const LPolynomial& L) {
    CentralValue v(L.q);
    for (size_t n = 0; n < L.c.size(); ++n) {
        Rat term(L.c[n], ipow(L.q, static_cast<int>(n / 2)));
        if (n % 2 == 0)
            v.a += term;
        else
            v.b += term;
    }
    return v;
}

CentralValue series_value_half(const LPolynomial& L) {
    CentralValue v = central_value(L);
    if (L.kind == family::Kind::ramified_imaginary) return v;
    // multiply by (1 -+ q^{-1/2})
    Rat sgn = L.kind == family::Kind::real ? Rat(-1) : Rat(1);
    CentralValue factor(Rat::one(), sgn, L.q);
    return v * factor;
}

std::complex<double> afe_evaluate(const FieldSpec& fs, const family::Discriminant& u,
                                  std::complex<double> s) {
    if (u.kind != family::Kind::ramified_imaginary)
        throw std::invalid_argument("afe_evaluate: ramified imaginary u required");
    const int g = u.genus();
    std::vector<long long> c = dirichlet_coeffs(fs, u, std::max(g, 0));
    const double lq = std::log(static_cast<double>(fs.q));
    std::complex<double> first = 0.0, second = 0.0;
    for (int n = 0; n <= g; ++n) first += static_cast<double>(c[n]) * std::exp(-s * (n * lq));
    for (int n = 0; n <= g - 1; ++n) second += static_cast<double>(c[n]) * std::exp((s - 1.0) * (n * lq));
    std::complex<double> xu = std::exp((1.0 - 2.0 * s) * (g * lq));
    return first + xu * second;
}

namespace {

// Exact integer polynomial helpers for the square-free reduction.  L* has
// small integer coefficients and degree <= 16, so a primitive pseudo-remainder
// gcd stays far inside __int128.
using IPoly = std::vector<__int128>;

__int128 i128_abs(__int128 v) { return v < 0 ? -v : v; }

__int128 i128_gcd(__int128 a, __int128 b) {
    a = i128_abs(a);
    b = i128_abs(b);
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void ip_trim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void ip_make_primitive(IPoly& a) {
    __int128 c = 0;
    for (__int128 v : a) c = i128_gcd(c, v);
    if (c > 1)
        for (__int128& v : a) v /= c;
    if (!a.empty() && a.back() < 0)
        for (__int128& v : a) v = -v;
}

IPoly ip_derivative(const IPoly& a) {
    IPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<__int128>(i) * a[i]);
    ip_trim(d);
    return d;
}

// Square-freeness certificate: deg gcd(a, a') over F_p bounds deg gcd over Q
// from above, so a zero-degree modular gcd proves the polynomial square-free.
// p = 2^61 - 1 never divides the (power of two) leading coefficients here.
constexpr uint64_t kModP = 2305843009213693951ull;

uint64_t mod_mul(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kModP);
}

uint64_t mod_pow(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mod_mul(r, a);
        a = mod_mul(a, a);
        e >>= 1;
    }
    return r;
}

int gcd_degree_mod_p(const IPoly& poly) {
    auto to_mod = [](const IPoly& v) {
        std::vector<uint64_t> m(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            __int128 x = v[i] % static_cast<__int128>(kModP);
            if (x < 0) x += kModP;
            m[i] = static_cast<uint64_t>(x);
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        return m;
    };
    std::vector<uint64_t> a = to_mod(poly);
    IPoly dv = ip_derivative(poly);
    std::vector<uint64_t> b = to_mod(dv);
    while (!b.empty()) {
        uint64_t inv = mod_pow(b.back(), kModP - 2);
        while (a.size() >= b.size() && !a.empty()) {
            uint64_t f = mod_mul(a.back(), inv);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t s = mod_mul(f, b[i]);
                a[off + i] = a[off + i] >= s ? a[off + i] - s : a[off + i] + kModP - s;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

std::vector<uint64_t> to_mod(const IPoly& v) {
    std::vector<uint64_t> m(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        __int128 x = v[i] % static_cast<__int128>(kModP);
        if (x < 0) x += kModP;
        m[i] = static_cast<uint64_t>(x);
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    return m;
}

std::vector<uint64_t> mod_gcd(std::vector<uint64_t> a, std::vector<uint64_t> b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        uint64_t inv = mod_pow(b.back(), kModP - 2);
        while (a.size() >= b.size() && !a.empty()) {
            uint64_t f = mod_mul(a.back(), inv);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t s = mod_mul(f, b[i]);
                a[off + i] = a[off + i] >= s ? a[off + i] - s : a[off + i] + kModP - s;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return a;
}

bool ip_divides_exactly(const IPoly& a, const IPoly& b) {
    IPoly r = a;
    while (r.size() >= b.size() && !r.empty()) {
        if (r.back() % b.back() != 0) return false;
        __int128 f = r.back() / b.back();
        size_t off = r.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) r[off + i] -= f * b[i];
        ip_trim(r);
        if (r.empty()) return true;
        if (r.size() < b.size()) return false;
    }
    return r.empty();
}

/// gcd(a, a') over Z via one modular image: the monic gcd mod p, scaled by
/// the integer leading coefficient, lifts symmetrically (the coefficients
/// sit far below p/2), and the candidate is verified by exact division.
IPoly ip_gcd_with_derivative(const IPoly& a) {
    IPoly da = ip_derivative(a);
    std::vector<uint64_t> gm = mod_gcd(to_mod(a), to_mod(da));
    if (gm.size() <= 1) return {1};
    uint64_t lc_int = 0;
    {
        __int128 x = a.back() % static_cast<__int128>(kModP);
        if (x < 0) x += kModP;
        lc_int = static_cast<uint64_t>(x);
    }
    uint64_t scale = mod_mul(lc_int, mod_pow(gm.back(), kModP - 2));
    IPoly g(gm.size());
    for (size_t i = 0; i < gm.size(); ++i) {
        uint64_t v = mod_mul(gm[i], scale);
        g[i] = v > kModP / 2 ? static_cast<__int128>(v) - static_cast<__int128>(kModP)
                             : static_cast<__int128>(v);
    }
    ip_make_primitive(g);
    if (!ip_divides_exactly(a, g) || !ip_divides_exactly(da, g))
        throw std::runtime_error("square-free reduction: modular gcd lift failed verification");
    return g;
}

// exact division; throws if not divisible
IPoly ip_divide_exact(const IPoly& a, const IPoly& b) {
    IPoly r = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (r.size() >= b.size() && !r.empty()) {
        if (r.back() % b.back() != 0) throw std::runtime_error("square-free reduction: division not exact");
        __int128 f = r.back() / b.back();
        size_t off = r.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i) r[off + i] -= f * b[i];
        ip_trim(r);
        if (r.empty()) break;
        if (r.size() < b.size()) throw std::runtime_error("square-free reduction: division not exact");
    }
    return q;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
    using C = std::complex<long double>;
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[static_cast<size_t>(deg)] == 0.0) --deg;
    if (deg < 1) return {};
    std::vector<C> a(coeffs.begin(), coeffs.begin() + deg + 1);
    for (auto& x : a) x /= a[static_cast<size_t>(deg)];

    // Durand-Kerner with deterministic start on a circle whose radius is the
    // Cauchy bound estimate; extended precision keeps near-multiple roots
    // accurate enough for the 1e-9 circle checks downstream.
    long double radius = 0;
    for (int i = 0; i < deg; ++i) radius = std::max(radius, std::abs(a[static_cast<size_t>(i)]));
    radius = std::max<long double>(0.5L, std::pow(radius, 1.0L / deg));
    std::vector<C> z(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        long double ang = 2.0L * std::numbers::pi_v<long double> * (i * 0.6180339887498949L + 0.1234L);
        z[static_cast<size_t>(i)] = radius * C(std::cos(ang), std::sin(ang));
    }
    auto eval = [&](C x) {
        C acc = 0;
        for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
        return acc;
    };
    const int max_iter = 400 + 60 * deg;
    for (int it = 0; it < max_iter; ++it) {
        long double worst = 0;
        for (int i = 0; i < deg; ++i) {
            C num = eval(z[static_cast<size_t>(i)]);
            C den = 1;
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            C step = num / den;
            z[static_cast<size_t>(i)] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-17L) break;
        // multiple roots stall at the rounding floor; the residual check
        // below decides whether the stalled approximants are acceptable
    }
    long double scale = 0;
    for (const auto& x : a) scale += std::abs(x);
    for (int i = 0; i < deg; ++i) {
        long double zi = std::max<long double>(1.0L, std::abs(z[static_cast<size_t>(i)]));
        long double bound = scale * std::pow(zi, deg) * 1e-12L;
        if (std::abs(eval(z[static_cast<size_t>(i)])) > bound) {
            std::ostringstream oss;
            oss << "poly_roots: Durand-Kerner did not converge for coefficients [";
            for (size_t j = 0; j < coeffs.size(); ++j) oss << (j ? ", " : "") << coeffs[j];
            oss << "]";
            throw std::runtime_error(oss.str());
        }
    }
    std::vector<std::complex<double>> out(z.size());
    for (size_t i = 0; i < z.size(); ++i)
        out[i] = {static_cast<double>(z[i].real()), static_cast<double>(z[i].imag())};
    return out;
}

namespace {

/// Roots of an integer polynomial, repeated with multiplicity.  Multiple
/// roots are found on the exact square-free part (where they are simple and
/// the iteration is accurate) and their multiplicities recovered from the
/// gcd chain L, gcd(L,L'), gcd(gcd,...): a root of multiplicity m appears in
/// exactly m square-free layers.
std::vector<std::complex<double>> integer_poly_roots(const std::vector<long long>& ic) {
    IPoly cur(ic.begin(), ic.end());
    ip_trim(cur);
    int degree = static_cast<int>(cur.size()) - 1;
    if (degree < 1) return {};

    std::vector<IPoly> layers;  // square-free parts of the gcd chain
    while (cur.size() > 1) {
        if (gcd_degree_mod_p(cur) == 0) {  // certified square-free
            layers.push_back(cur);
            break;
        }
        IPoly g = ip_gcd_with_derivative(cur);
        if (g.size() <= 1) {
            layers.push_back(cur);
            break;
        }
        layers.push_back(ip_divide_exact(cur, g));
        cur = std::move(g);
    }

    std::vector<double> base(layers[0].begin(), layers[0].end());
    std::vector<std::complex<double>> distinct = poly_roots(base);
    std::vector<std::complex<double>> out;
    for (const auto& z : distinct) {
        int mult = 1;
        for (size_t l = 1; l < layers.size(); ++l) {
            std::complex<long double> acc = 0.0L, zl(z.real(), z.imag());
            long double scale = 0.0L;
            for (size_t i = layers[l].size(); i-- > 0;) {
                acc = acc * zl + static_cast<long double>(static_cast<double>(layers[l][i]));
                scale = scale * std::abs(zl) + std::abs(static_cast<long double>(static_cast<double>(layers[l][i])));
            }
            if (std::abs(acc) < 1e-9L * std::max(scale, 1.0L)) ++mult;
        }
        for (int i = 0; i < mult; ++i) out.push_back(z);
    }
    if (static_cast<int>(out.size()) != degree)
        throw std::runtime_error("integer_poly_roots: multiplicity bookkeeping does not match the degree");
    return out;
}

}  // namespace

Zeros zeros(const LPolynomial& L) {
    Zeros out;
    out.z = integer_poly_roots(L.c);
    const double lq = std::log(static_cast<double>(L.q));
    std::sort(out.z.begin(), out.z.end(), [](const auto& x, const auto& y) {
        double ax = std::arg(x), ay = std::arg(y);
        if (ax != ay) return ax < ay;
        return std::abs(x) < std::abs(y);
    });
    out.ordinates.reserve(out.z.size());
    for (const auto& zz : out.z) {
        double theta = std::arg(zz);  // in (-pi, pi]
        double gamma = -theta / lq;   // in [-pi/lq, pi/lq)
        if (gamma <= -std::numbers::pi / lq) gamma += 2.0 * std::numbers::pi / lq;
        out.ordinates.push_back(gamma);
    }
    return out;
}

}  // namespace eclab::lfunction
