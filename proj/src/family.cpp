#include "eclab/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace eclab::family {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::ramified_imaginary: return "ramified_imaginary";
        case Kind::real: return "real";
        case Kind::inert_imaginary: return "inert_imaginary";
    }
    return "?";
}

uint8_t rho(const FieldSpec& fs, uint8_t x) { return fs.add(fs.mul(x, x), x); }

uint8_t xi(const FieldSpec& fs) {
    bool image[16] = {};
    for (int x = 0; x < fs.q; ++x) image[rho(fs, static_cast<uint8_t>(x))] = true;
    for (int v = 0; v < fs.q; ++v)
        if (!image[v]) return static_cast<uint8_t>(v);
    throw std::logic_error("xi: rho is surjective, which cannot happen in characteristic 2");
}

namespace {

/// Checks that F has the admissible shape alpha + sum alpha_i T^{2i-1} and
/// returns its infinite half-degree s (0 for constant F).
int infinite_half_degree(const FieldSpec& fs, const Poly& F, bool& is_xi) {
    uint8_t x = xi(fs);
    uint8_t alpha = F.coeff(0);
    if (alpha != 0 && alpha != x)
        throw std::invalid_argument("discriminant: constant term must be 0 or xi");
    is_xi = alpha == x;
    for (int i = 2; i <= F.degree(); i += 2)
        if (F.coeff(i) != 0) throw std::invalid_argument("discriminant: even-degree term in polynomial part");
    if (F.degree() < 1) return 0;
    if (F.degree() % 2 == 0) throw std::invalid_argument("discriminant: polynomial part must have odd degree");
    return (F.degree() + 1) / 2;
}

}  // namespace

Discriminant make_discriminant(const FieldSpec& fs, std::vector<PrimeBlock> finite, Poly infinite) {
    Discriminant u;
    int r = 0;
    for (auto& blk : finite) {
        if (blk.coeffs.empty()) throw std::invalid_argument("discriminant: empty prime block");
        if (blk.coeffs.back().is_zero())
            throw std::invalid_argument("discriminant: top prime-fraction coefficient must be nonzero");
        for (const Poly& a : blk.coeffs)
            if (a.degree() >= blk.prime.degree())
                throw std::invalid_argument("discriminant: coefficient degree must be below prime degree");
        r += static_cast<int>(blk.coeffs.size()) * blk.prime.degree();
    }
    std::sort(finite.begin(), finite.end(),
              [](const PrimeBlock& a, const PrimeBlock& b) { return poly_less(a.prime, b.prime); });
    bool is_xi = false;
    int s = infinite_half_degree(fs, infinite, is_xi);
    u.finite = std::move(finite);
    u.infinite = std::move(infinite);
    u.xi_flag = is_xi;
    u.half_degree = r + s;
    u.kind = s > 0 ? Kind::ramified_imaginary : (is_xi ? Kind::inert_imaginary : Kind::real);
    return u;
}

std::pair<Poly, Poly> as_fraction(const FieldSpec& fs, const Discriminant& u) {
    Poly den = Poly::constant(1);
    for (const auto& blk : u.finite)
        den = poly_mul(fs, den, poly_pow(fs, blk.prime, 2 * static_cast<unsigned>(blk.coeffs.size()) - 1));
    Poly num = poly_mul(fs, u.infinite, den);
    for (const auto& blk : u.finite) {
        Poly rest = poly_divmod(fs, den, poly_pow(fs, blk.prime, 2 * static_cast<unsigned>(blk.coeffs.size()) - 1)).first;
        for (size_t i = 0; i < blk.coeffs.size(); ++i) {
            // A_{P,i+1} / P^{2i+1} brought over the common denominator
            Poly lift = poly_mul(fs, blk.coeffs[i],
                                 poly_pow(fs, blk.prime, 2 * (static_cast<unsigned>(blk.coeffs.size()) - 1 - static_cast<unsigned>(i))));
            num = poly_add(num, poly_mul(fs, lift, rest));
        }
    }
    return {num, den};
}

std::string key(const FieldSpec& fs, const Discriminant& u) {
    int r = 0;
    Poly M = Poly::constant(1);
    std::string coeffs;
    for (const auto& blk : u.finite) {
        r += static_cast<int>(blk.coeffs.size()) * blk.prime.degree();
        M = poly_mul(fs, M, poly_pow(fs, blk.prime, 2 * static_cast<unsigned>(blk.coeffs.size()) - 1));
        if (!coeffs.empty()) coeffs += ";";
        coeffs += poly_to_string(fs, blk.prime) + ":";
        for (size_t i = 0; i < blk.coeffs.size(); ++i) {
            if (i) coeffs += ",";
            coeffs += poly_to_string(fs, blk.coeffs[i]);
        }
    }
    return std::to_string(r) + "|" + poly_to_string(fs, M) + "|" + coeffs + "|" + poly_to_string(fs, u.infinite);
}

std::vector<Poly> enumerate_B(const FieldSpec& fs, int n) {
    if (n < 1) throw std::invalid_argument("enumerate_B: n >= 1 required");
    // M <-> sqrt(M * rad(M)) is a bijection with the monic polynomials of
    // degree n: if N = prod P^{l_P} then M = prod P^{2 l_P - 1}.
    std::vector<Poly> out;
    algebra::for_each_monic(fs, n, [&](const Poly& N) {
        algebra::Factorization fac = algebra::factorize(fs, N);
        Poly M = Poly::constant(1);
        for (const auto& [p, l] : fac.primes)
            M = poly_mul(fs, M, poly_pow(fs, p, 2 * static_cast<unsigned>(l) - 1));
        out.push_back(M);
    });
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

void for_each_G(const FieldSpec& fs, int s, const std::function<void(const Poly&)>& fn) {
    if (s < 1) throw std::invalid_argument("for_each_G: s >= 1 required");
    uint8_t x = xi(fs);
    uint64_t inner = 1;  // choices for alpha_1..alpha_{s-1}
    for (int i = 1; i < s; ++i) inner *= fs.q;
    for (int alpha_idx = 0; alpha_idx < 2; ++alpha_idx) {
        for (uint64_t rank = 0; rank < inner; ++rank) {
            for (int top = 1; top < fs.q; ++top) {
                Poly F;
                F.c.assign(static_cast<size_t>(2 * s), 0);
                F.c[0] = alpha_idx == 0 ? 0 : x;
                uint64_t rest = rank;
                for (int i = s - 1; i >= 1; --i) {  // alpha_1 most significant
                    F.c[2 * i - 1] = static_cast<uint8_t>(rest % fs.q);
                    rest /= fs.q;
                }
                F.c[2 * s - 1] = static_cast<uint8_t>(top);
                F.trim();
                fn(F);
            }
        }
    }
}

std::vector<Poly> enumerate_G(const FieldSpec& fs, int s) {
    std::vector<Poly> out;
    for_each_G(fs, s, [&](const Poly& F) { out.push_back(F); });
    return out;
}

namespace {

/// Iterate all coefficient tables over the prime blocks of M in B_r,
/// lexicographically (earlier blocks and earlier coefficients most
/// significant), invoking fn with a ready PrimeBlock vector.
void for_each_coeff_table(const FieldSpec& fs, const algebra::Factorization& fac,
                          const std::function<void(const std::vector<PrimeBlock>&)>& fn) {
    struct Slot {
        const Poly* prime;
        int dP;
        uint64_t count;    // q^dP
        bool top;          // top coefficient slot: nonzero only
    };
    std::vector<Slot> slots;
    for (const auto& [p, e] : fac.primes) {
        int l = (e + 1) / 2;  // valuations are odd: e = 2l - 1
        uint64_t cnt = 1;
        for (int i = 0; i < p.degree(); ++i) cnt *= fs.q;
        for (int i = 1; i <= l; ++i) slots.push_back({&p, p.degree(), cnt, i == l});
    }
    std::vector<uint64_t> idx(slots.size(), 0);
    for (size_t i = 0; i < slots.size(); ++i) idx[i] = slots[i].top ? 1 : 0;

    std::vector<PrimeBlock> blocks;
    auto emit = [&] {
        blocks.clear();
        size_t pos = 0;
        for (const auto& [p, e] : fac.primes) {
            int l = (e + 1) / 2;
            PrimeBlock blk;
            blk.prime = p;
            for (int i = 0; i < l; ++i) blk.coeffs.push_back(residue_from_rank(fs, slots[pos].dP, idx[pos])), ++pos;
            blocks.push_back(std::move(blk));
        }
        fn(blocks);
    };

    for (;;) {
        emit();
        int j = static_cast<int>(slots.size()) - 1;
        while (j >= 0) {
            ++idx[j];
            if (idx[j] < slots[j].count) break;
            idx[j] = slots[j].top ? 1 : 0;
            --j;
        }
        if (j < 0) break;
    }
}

void for_each_F_impl(const FieldSpec& fs, int n, bool add_xi,
                     const std::function<void(const Discriminant&)>& fn) {
    if (n < 1) throw std::invalid_argument("for_each_F: n >= 1 required");
    Poly F = add_xi ? Poly::constant(xi(fs)) : Poly::zero();
    for (const Poly& M : enumerate_B(fs, n)) {
        algebra::Factorization fac = algebra::factorize(fs, M);
        for_each_coeff_table(fs, fac, [&](const std::vector<PrimeBlock>& blocks) {
            fn(make_discriminant(fs, blocks, F));
        });
    }
}

}  // namespace

void for_each_F(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn) {
    for_each_F_impl(fs, n, false, fn);
}

void for_each_Fprime(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn) {
    for_each_F_impl(fs, n, true, fn);
}

void for_each_I(const FieldSpec& fs, int n, const std::function<void(const Discriminant&)>& fn) {
    if (n < 1) throw std::invalid_argument("for_each_I: n >= 1 required");
    for (int r = 0; r <= n - 1; ++r) {
        int s = n - r;
        if (r == 0) {
            for_each_G(fs, s, [&](const Poly& F) { fn(make_discriminant(fs, {}, F)); });
            continue;
        }
        for (const Poly& M : enumerate_B(fs, r)) {
            algebra::Factorization fac = algebra::factorize(fs, M);
            for_each_coeff_table(fs, fac, [&](const std::vector<PrimeBlock>& blocks) {
                for_each_G(fs, s, [&](const Poly& F) { fn(make_discriminant(fs, blocks, F)); });
            });
        }
    }
}

Set set_from_name(const std::string& name) {
    if (name == "B") return Set::B;
    if (name == "G") return Set::G;
    if (name == "F") return Set::F;
    if (name == "Fprime" || name == "F'") return Set::Fprime;
    if (name == "I") return Set::I;
    throw std::invalid_argument("unknown family set: " + name);
}

void for_each_discriminant(const FieldSpec& fs, Set which, int n,
                           const std::function<void(const Discriminant&)>& fn) {
    switch (which) {
        case Set::F: for_each_F(fs, n, fn); return;
        case Set::Fprime: for_each_Fprime(fs, n, fn); return;
        case Set::I: for_each_I(fs, n, fn); return;
        default: throw std::invalid_argument("for_each_discriminant: B and G are polynomial sets");
    }
}

std::vector<Discriminant> enumerate(const FieldSpec& fs, Set which, int n) {
    std::vector<Discriminant> out;
    for_each_discriminant(fs, which, n, [&](const Discriminant& u) { out.push_back(u); });
    return out;
}

uint64_t count(const FieldSpec& fs, Set which, int n) {
    if (which == Set::B) return enumerate_B(fs, n).size();
    if (which == Set::G) {
        uint64_t c = 0;
        for_each_G(fs, n, [&](const Poly&) { ++c; });
        return c;
    }
    uint64_t c = 0;
    for_each_discriminant(fs, which, n, [&](const Discriminant&) { ++c; });
    return c;
}

uint64_t expected_count(const FieldSpec& fs, Set which, int n) {
    auto qpow = [&](int e) {
        uint64_t v = 1;
        for (int i = 0; i < e; ++i) v *= fs.q;
        return v;
    };
    switch (which) {
        case Set::B: return qpow(n);
        case Set::G: return 2 * (fs.q - 1) * qpow(n - 1);
        case Set::F:
        case Set::Fprime: return qpow(2 * n) / fs.q * (fs.q - 1);  // (1 - 1/q) q^{2n}
        case Set::I: return 2 * (qpow(2 * n - 1) / fs.q * (fs.q - 1));
    }
    throw std::logic_error("expected_count");
}

}  // namespace eclab::family
