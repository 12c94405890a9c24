#include "eclab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>

namespace eclab::algebra {

namespace {

std::mutex g_cache_mutex;
std::string g_cache_dir;
bool g_cache_dir_set = false;

std::string resolve_cache_dir() {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    if (!g_cache_dir_set) {
        const char* env = std::getenv("ECLAB_CACHE_DIR");
        g_cache_dir = env ? env : "";
        g_cache_dir_set = true;
    }
    return g_cache_dir;
}

}  // namespace

void set_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_cache_dir = dir;
    g_cache_dir_set = true;
}

std::string cache_dir() { return resolve_cache_dir(); }

void for_each_monic(const FieldSpec& fs, int d, const std::function<void(const Poly&)>& fn) {
    if (d < 0) throw std::invalid_argument("for_each_monic: negative degree");
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= fs.q;
    for (uint64_t r = 0; r < count; ++r) fn(monic_from_rank(fs, d, r));
}

std::vector<Poly> monic_polys(const FieldSpec& fs, int d) {
    std::vector<Poly> out;
    for_each_monic(fs, d, [&](const Poly& f) { out.push_back(f); });
    return out;
}

int int_mobius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

uint64_t irreducible_count(int q, int d) {
    if (d < 1) throw std::invalid_argument("irreducible_count: degree must be >= 1");
    if (d * std::log2(static_cast<double>(q)) >= 63.0)
        throw std::overflow_error("irreducible_count: q^d exceeds 64 bits; use the double version");
    __int128 total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = int_mobius(e);
        if (mu == 0) continue;
        __int128 pw = 1;
        for (int i = 0; i < d / e; ++i) pw *= q;
        total += mu * pw;
    }
    return static_cast<uint64_t>(total / d);
}

double irreducible_count_double(int q, int d) {
    if (d < 1) throw std::invalid_argument("irreducible_count_double: degree must be >= 1");
    long double total = 0.0L;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = int_mobius(e);
        if (mu == 0) continue;
        total += mu * std::pow(static_cast<long double>(q), static_cast<long double>(d / e));
    }
    return static_cast<double>(total / d);
}

namespace {

/// Per-q irreducible table: degrees built once, then immutable.  The outer
/// array has fixed capacity so references handed out for built degrees stay
/// valid while later degrees are added.
struct IrrTable {
    static constexpr int kMaxDegrees = 64;
    std::mutex mu;
    std::vector<std::vector<Poly>> by_degree = std::vector<std::vector<Poly>>(kMaxDegrees);
    int built = 0;  // degrees 1..built are final
};

IrrTable& table_for(int q) {
    static IrrTable tables[4];
    switch (q) {
        case 2: return tables[0];
        case 4: return tables[1];
        case 8: return tables[2];
        case 16: return tables[3];
        default: throw std::invalid_argument("irreducibles: unsupported q");
    }
}

std::string irr_cache_path(int q, int maxdeg) {
    std::string dir = cache_dir();
    if (dir.empty()) return "";
    return dir + "/irreducibles_q" + std::to_string(q) + "_maxdeg" + std::to_string(maxdeg) + ".txt";
}

bool load_irr_cache(const FieldSpec& fs, int maxdeg, IrrTable& t) {
    std::string path = irr_cache_path(fs.q, maxdeg);
    if (path.empty()) return false;
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header)) return false;
    std::string expect = "q=" + std::to_string(fs.q) + " maxdeg=" + std::to_string(maxdeg);
    if (header != expect) return false;
    std::vector<std::vector<Poly>> tmp(static_cast<size_t>(maxdeg) + 1);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Poly f = poly_from_string(fs, line);
        if (!f.monic() || f.degree() < 1 || f.degree() > maxdeg) return false;
        tmp[f.degree()].push_back(f);
    }
    for (int d = 1; d <= maxdeg; ++d) {
        if (tmp[d].size() != irreducible_count(fs.q, d)) return false;
        if (!std::is_sorted(tmp[d].begin(), tmp[d].end(), poly_less)) return false;
    }
    for (int d = 1; d <= maxdeg; ++d) t.by_degree[static_cast<size_t>(d)] = std::move(tmp[static_cast<size_t>(d)]);
    t.built = maxdeg;
    return true;
}

void store_irr_cache(const FieldSpec& fs, int maxdeg, const std::vector<std::vector<Poly>>& by_degree) {
    // degrees 1..maxdeg must already be built
    std::string path = irr_cache_path(fs.q, maxdeg);
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir(), ec);
    std::ofstream out(path, std::ios::trunc);
    if (!out) return;  // cache write failures are non-fatal
    out << "q=" << fs.q << " maxdeg=" << maxdeg << "\n";
    for (int d = 1; d <= maxdeg; ++d)
        for (const Poly& f : by_degree[d]) out << poly_to_string(fs, f) << "\n";
}

/// Trial division by the already-built irreducibles of degree <= d/2.
bool is_irreducible_by_trial(const FieldSpec& fs, const Poly& f,
                             const std::vector<std::vector<Poly>>& by_degree) {
    for (int d = 1; d <= f.degree() / 2; ++d)
        for (const Poly& p : by_degree[d])
            if (poly_divides(fs, p, f)) return false;
    return true;
}

void build_up_to(const FieldSpec& fs, int maxdeg, IrrTable& t) {
    if (maxdeg >= IrrTable::kMaxDegrees) throw std::invalid_argument("irreducibles: degree too large");
    if (t.built >= maxdeg) return;
    if (t.built == 0 && load_irr_cache(fs, maxdeg, t)) return;
    for (int d = t.built + 1; d <= maxdeg; ++d) {
        for_each_monic(fs, d, [&](const Poly& f) {
            if (is_irreducible_by_trial(fs, f, t.by_degree)) t.by_degree[static_cast<size_t>(d)].push_back(f);
        });
        if (t.by_degree[static_cast<size_t>(d)].size() != irreducible_count(fs.q, d))
            throw std::logic_error("irreducible table does not match the divisor-sum count");
        t.built = d;
    }
    store_irr_cache(fs, maxdeg, t.by_degree);
}

}  // namespace

const std::vector<Poly>& irreducibles(const FieldSpec& fs, int d) {
    if (d < 1) throw std::invalid_argument("irreducibles: degree must be >= 1");
    IrrTable& t = table_for(fs.q);
    std::lock_guard<std::mutex> lk(t.mu);
    build_up_to(fs, d, t);
    return t.by_degree[static_cast<size_t>(d)];
}

void warm_irreducibles(const FieldSpec& fs, int maxdeg) {
    IrrTable& t = table_for(fs.q);
    std::lock_guard<std::mutex> lk(t.mu);
    build_up_to(fs, maxdeg, t);
    std::string path = irr_cache_path(fs.q, maxdeg);
    if (!path.empty() && !std::filesystem::exists(path)) store_irr_cache(fs, maxdeg, t.by_degree);
}

Factorization factorize(const FieldSpec& fs, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorize: zero polynomial");
    Factorization fac;
    fac.unit = f.sgn();
    Poly rem = f.monic() ? f : poly_scale(fs, f, fs.inv(f.sgn()));
    for (int d = 1; rem.degree() >= 2 * d; ++d) {
        for (const Poly& p : irreducibles(fs, d)) {
            if (rem.degree() < 2 * d) break;
            int e = 0;
            for (;;) {
                auto [quot, r] = poly_divmod(fs, rem, p);
                if (!r.is_zero()) break;
                rem = quot;
                ++e;
            }
            if (e > 0) fac.primes.emplace_back(p, e);
        }
    }
    if (rem.degree() >= 1) fac.primes.emplace_back(rem, 1);
    std::sort(fac.primes.begin(), fac.primes.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return fac;
}

Poly unfactorize(const FieldSpec& fs, const Factorization& fac) {
    Poly r = Poly::constant(fac.unit);
    for (const auto& [p, e] : fac.primes) r = poly_mul(fs, r, poly_pow(fs, p, static_cast<unsigned>(e)));
    return r;
}

int mobius(const FieldSpec& fs, const Poly& f) {
    if (f.is_zero() || !f.monic()) throw std::domain_error("mobius: monic nonzero input required");
    Factorization fac = factorize(fs, f);
    for (const auto& [p, e] : fac.primes)
        if (e >= 2) return 0;
    return fac.primes.size() % 2 == 0 ? 1 : -1;
}

uint64_t phi(const FieldSpec& fs, const Poly& f) {
    if (f.is_zero() || !f.monic()) throw std::domain_error("phi: monic nonzero input required");
    Factorization fac = factorize(fs, f);
    uint64_t r = 1;
    for (const auto& [p, e] : fac.primes) {
        uint64_t np = norm(fs, p);
        for (int i = 0; i < e - 1; ++i) r *= np;
        r *= np - 1;
    }
    return r;
}

Poly residue_reduce(const FieldSpec& fs, const Poly& a, const Poly& P) { return poly_mod(fs, a, P); }

Poly residue_invert(const FieldSpec& fs, const Poly& a, const Poly& P) {
    // extended Euclid in F_q[T]
    Poly r0 = P, r1 = poly_mod(fs, a, P);
    if (r1.is_zero()) throw std::domain_error("residue_invert: not invertible (P divides a)");
    Poly t0 = Poly::zero(), t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(fs, r0, r1);
        Poly t2 = poly_add(t0, poly_mul(fs, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::domain_error("residue_invert: gcd(a, P) != 1");
    return poly_mod(fs, poly_scale(fs, t0, fs.inv(r0.sgn())), P);
}

int trace_to_F2(const FieldSpec& fs, const Poly& a, const Poly& P) {
    Poly x = poly_mod(fs, a, P);
    Poly t = x, s = x;
    int bits = fs.m * P.degree();
    for (int i = 1; i < bits; ++i) {
        s = poly_mod(fs, poly_mul(fs, s, s), P);
        t = poly_add(t, s);
    }
    if (t.is_zero()) return 0;
    if (t.degree() == 0 && t.coeff(0) == 1) return 1;
    throw std::logic_error("trace_to_F2: trace did not land in F_2");
}

uint64_t sum_phi_coprime(const FieldSpec& fs, int n, const Poly& L) {
    if (n < 1) throw std::invalid_argument("sum_phi_coprime: n >= 1 required");
    if (!L.monic() && !(L.degree() == 0 && L.coeff(0) == 1))
        throw std::invalid_argument("sum_phi_coprime: L must be monic");
    uint64_t total = 0;
    for_each_monic(fs, n, [&](const Poly& f) {
        if (L.degree() >= 1 && poly_gcd(fs, f, L).degree() != 0) return;
        total += phi(fs, f);
    });
    return total;
}

}  // namespace eclab::algebra
