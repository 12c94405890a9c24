#include "eclab/character.hpp"

#include <cstring>
#include <stdexcept>

namespace eclab::character {

namespace {

bool in_support(const family::Discriminant& u, const Poly& P) {
    for (const auto& blk : u.finite)
        if (blk.prime == P) return true;
    return false;
}

}  // namespace

int hasse(const FieldSpec& fs, const family::Discriminant& u, const Poly& P) {
    if (in_support(u, P)) throw std::domain_error("hasse: P divides the denominator of u");
    auto [num, den] = family::as_fraction(fs, u);
    Poly a = den.degree() == 0 && den.coeff(0) == 1
                 ? algebra::residue_reduce(fs, num, P)
                 : poly_mod(fs, poly_mul(fs, algebra::residue_reduce(fs, num, P),
                                         algebra::residue_invert(fs, den, P)),
                            P);
    return algebra::trace_to_F2(fs, a, P);
}

int chi(const FieldSpec& fs, const family::Discriminant& u, const Poly& f) {
    if (f.is_zero() || !f.monic()) throw std::invalid_argument("chi: monic nonzero f required");
    algebra::Factorization fac = algebra::factorize(fs, f);
    int bit = 0;
    for (const auto& [p, e] : fac.primes) {
        if (in_support(u, p)) return 0;
        if (e & 1) bit ^= hasse(fs, u, p);
    }
    return bit ? -1 : 1;
}

namespace {

// Low-level residue arithmetic on fixed-size byte buffers (degree < 16).
// P is monic of degree d with coefficient array p[0..d].

void mul_mod(const FieldSpec& fs, const uint8_t* a, int da, const uint8_t* b, int db,
             const uint8_t* p, int d, uint8_t* out) {
    uint8_t tmp[32] = {};
    for (int i = 0; i <= da; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j <= db; ++j) tmp[i + j] ^= fs.mul(a[i], b[j]);
    }
    for (int j = da + db; j >= d; --j) {
        uint8_t top = tmp[j];
        if (top == 0) continue;
        for (int i = 0; i <= d; ++i) tmp[j - d + i] ^= fs.mul(top, p[i]);
    }
    std::memcpy(out, tmp, static_cast<size_t>(d));
}

}  // namespace

SymbolEngine::SymbolEngine(const FieldSpec& fs, int family_n, int max_f_degree)
    : fs_(fs), family_n_(family_n), max_f_degree_(max_f_degree) {
    if (family_n < 1 || max_f_degree < 0) throw std::invalid_argument("SymbolEngine: bad bounds");
    max_support_degree_ = family_n;
    max_power_index_ = family_n;  // powers P^1, P^3, ..., P^{2 family_n - 1}
    int max_deg = std::max(max_f_degree, 1);
    if (max_deg >= kMaxDeg) throw std::invalid_argument("SymbolEngine: degree bound too large");

    prime_offset_.assign(static_cast<size_t>(max_deg) + 2, 0);
    prime_id_by_rank_.resize(static_cast<size_t>(max_deg) + 1);
    for (int d = 1; d <= max_deg; ++d) {
        prime_offset_[d] = static_cast<int>(primes_.size());
        uint64_t ranks = 1;
        for (int i = 0; i < d; ++i) ranks *= fs.q;
        prime_id_by_rank_[d].assign(ranks, -1);
        for (const Poly& p : algebra::irreducibles(fs, d)) {
            prime_id_by_rank_[d][rank_of_monic(fs, p)] = static_cast<int32_t>(primes_.size());
            primes_.push_back(p);
            prime_deg_.push_back(d);
        }
    }
    prime_offset_[max_deg + 1] = static_cast<int>(primes_.size());

    // Inverses of support prime powers modulo every evaluation prime.
    support_prime_count_ = prime_offset_[std::min(max_support_degree_, max_deg) + 1];
    inv_pow_.assign(static_cast<size_t>(support_prime_count_) * max_power_index_ * primes_.size() * kMaxDeg, 0);
    for (int sid = 0; sid < support_prime_count_; ++sid) {
        const Poly& S = primes_[sid];
        for (size_t pid = 0; pid < primes_.size(); ++pid) {
            if (static_cast<int>(pid) == sid) continue;
            const Poly& P = primes_[pid];
            Poly inv1 = algebra::residue_invert(fs, S, P);          // S^{-1} mod P
            Poly inv2 = poly_mod(fs, poly_mul(fs, inv1, inv1), P);  // S^{-2} mod P
            Poly cur = inv1;
            for (int i = 0; i < max_power_index_; ++i) {
                uint8_t* slot = &inv_pow_[((static_cast<size_t>(sid) * max_power_index_ + i) * primes_.size() + pid) * kMaxDeg];
                for (int j = 0; j <= cur.degree(); ++j) slot[j] = cur.c[j];
                cur = poly_mod(fs, poly_mul(fs, cur, inv2), P);  // next odd power
            }
        }
    }

    // T^j mod P for the polynomial parts (degree <= 2 family_n - 1).
    t_pow_len_ = 2 * family_n;  // exponents 0 .. 2n-1
    t_pow_.assign(static_cast<size_t>(primes_.size()) * t_pow_len_ * kMaxDeg, 0);
    for (size_t pid = 0; pid < primes_.size(); ++pid) {
        const Poly& P = primes_[pid];
        Poly cur = Poly::constant(1);
        for (int j = 0; j < t_pow_len_; ++j) {
            uint8_t* slot = &t_pow_[(static_cast<size_t>(pid) * t_pow_len_ + j) * kMaxDeg];
            for (int i = 0; i <= cur.degree(); ++i) slot[i] = cur.c[i];
            cur = poly_mod(fs, poly_shift(cur, 1), P);
        }
    }

    // Trace masks: the absolute trace is additive, so it is determined by
    // its values on the F_2 basis of the residue field.
    trace_mask_.assign(primes_.size(), 0);
    for (size_t pid = 0; pid < primes_.size(); ++pid) {
        const Poly& P = primes_[pid];
        uint32_t mask = 0;
        for (int j = 0; j < P.degree(); ++j)
            for (int b = 0; b < fs.m; ++b) {
                Poly e = poly_shift(Poly::constant(static_cast<uint8_t>(1u << b)), j);
                if (algebra::trace_to_F2(fs, e, P)) mask |= 1u << (j * fs.m + b);
            }
        trace_mask_[pid] = mask;
    }

    // Factorization table of all monic f with deg f <= max_f_degree.
    ftab_.resize(static_cast<size_t>(max_f_degree) + 1);
    ftab_[0].assign(1, {0, 0});  // f = 1: empty factorization
    for (int d = 1; d <= max_f_degree; ++d) {
        uint64_t ranks = 1;
        for (int i = 0; i < d; ++i) ranks *= fs.q;
        ftab_[d].resize(ranks);
        for (uint64_t r = 0; r < ranks; ++r) {
            Poly f = monic_from_rank(fs, d, r);
            algebra::Factorization fac = algebra::factorize(fs, f);
            Slice s;
            s.begin = static_cast<uint32_t>(fpairs_.size());
            for (const auto& [p, e] : fac.primes)
                fpairs_.emplace_back(static_cast<uint16_t>(prime_id_by_rank_[p.degree()][rank_of_monic(fs, p)]),
                                     static_cast<uint8_t>(e));
            s.end = static_cast<uint32_t>(fpairs_.size());
            ftab_[d][r] = s;
        }
    }
}

int SymbolEngine::prime_id(const Poly& P) const {
    int d = P.degree();
    if (d < 1 || d >= static_cast<int>(prime_id_by_rank_.size())) return -1;
    int32_t id = prime_id_by_rank_[d][rank_of_monic(fs_, P)];
    return id;
}

void SymbolEngine::symbols(const family::Discriminant& u, int8_t* out) const {
    const FieldSpec& fs = fs_;
    // support prime ids and per-block data
    int support_ids[16];
    int nblocks = static_cast<int>(u.finite.size());
    if (nblocks > 16) throw std::invalid_argument("symbols: support too large");
    for (int b = 0; b < nblocks; ++b) {
        support_ids[b] = prime_id(u.finite[b].prime);
        if (support_ids[b] < 0 || support_ids[b] >= support_prime_count_)
            throw std::logic_error("symbols: support prime outside precomputed range");
    }
    // nonzero terms of the polynomial part
    int fterms_j[2 * kMaxDeg];
    uint8_t fterms_v[2 * kMaxDeg];
    int nfterms = 0;
    for (int j = 0; j <= u.infinite.degree(); ++j) {
        uint8_t v = u.infinite.coeff(j);
        if (v) {
            if (j >= t_pow_len_) throw std::logic_error("symbols: polynomial part too large for engine");
            fterms_j[nfterms] = j;
            fterms_v[nfterms] = v;
            ++nfterms;
        }
    }

    for (int pid = 0; pid < static_cast<int>(primes_.size()); ++pid) {
        bool skip = false;
        for (int b = 0; b < nblocks; ++b)
            if (support_ids[b] == pid) {
                out[pid] = 0;
                skip = true;
                break;
            }
        if (skip) continue;

        int d = prime_deg_[pid];
        uint8_t pbuf[kMaxDeg + 1];
        const Poly& P = primes_[pid];
        for (int i = 0; i <= d; ++i) pbuf[i] = P.c[i];

        uint8_t acc[kMaxDeg] = {};
        for (int t = 0; t < nfterms; ++t) {
            const uint8_t* tp = t_pow_entry(pid, fterms_j[t]);
            for (int i = 0; i < d; ++i) acc[i] ^= fs.mul(fterms_v[t], tp[i]);
        }
        for (int b = 0; b < nblocks; ++b) {
            const auto& blk = u.finite[b];
            for (size_t i = 0; i < blk.coeffs.size(); ++i) {
                const Poly& A = blk.coeffs[i];
                if (A.is_zero()) continue;
                uint8_t abuf[kMaxDeg] = {};
                for (int j = 0; j <= A.degree(); ++j) abuf[j] = A.c[j];
                const uint8_t* w = inv_pow_entry(support_ids[b], static_cast<int>(i), pid);
                uint8_t prod[kMaxDeg];
                mul_mod(fs, abuf, A.degree(), w, d - 1, pbuf, d, prod);
                for (int j = 0; j < d; ++j) acc[j] ^= prod[j];
            }
        }

        // absolute trace of acc down to F_2 via the precomputed parity mask
        uint32_t packed = 0;
        for (int j = 0; j < d; ++j) packed |= static_cast<uint32_t>(acc[j]) << (j * fs.m);
        out[pid] = (__builtin_popcount(packed & trace_mask_[pid]) & 1) ? -1 : 1;
    }
}

int SymbolEngine::chi_from_symbols(const int8_t* sym, int deg, uint64_t rank) const {
    const Slice s = ftab_[deg][rank];
    int v = 1;
    for (uint32_t i = s.begin; i < s.end; ++i) {
        int8_t sp = sym[fpairs_[i].first];
        if (sp == 0) return 0;
        if ((fpairs_[i].second & 1) && sp < 0) v = -v;
    }
    return v;
}

void SymbolEngine::dirichlet_coeffs(const int8_t* sym, int N, long long* c) const {
    for (int d = 0; d <= N; ++d) {
        long long total = 0;
        for (uint64_t r = 0; r < ftab_[d].size(); ++r) total += chi_from_symbols(sym, d, r);
        c[d] = total;
    }
}

}  // namespace eclab::character
