#include "eclab/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace eclab {

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

uint64_t norm(const FieldSpec& fs, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("norm of zero polynomial");
    uint64_t n = 1;
    for (int i = 0; i < f.degree(); ++i) n *= static_cast<uint64_t>(fs.q);
    return n;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(static_cast<int>(i)) ^ b.coeff(static_cast<int>(i));
    r.trim();
    return r;
}

Poly poly_scale(const FieldSpec& fs, const Poly& a, uint8_t s) {
    if (s == 0) return Poly::zero();
    Poly r = a;
    for (auto& x : r.c) x = fs.mul(x, s);
    return r;
}

Poly poly_mul(const FieldSpec& fs, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] ^= fs.mul(a.c[i], b.c[j]);
    }
    r.trim();
    return r;
}

Poly poly_shift(const Poly& a, int k) {
    if (a.is_zero()) return a;
    Poly r;
    r.c.assign(a.c.size() + static_cast<size_t>(k), 0);
    std::copy(a.c.begin(), a.c.end(), r.c.begin() + k);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const FieldSpec& fs, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero");
    if (a.degree() < b.degree()) return {Poly::zero(), a};
    Poly rem = a;
    Poly quot;
    quot.c.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, 0);
    const uint8_t lead_inv = fs.inv(b.sgn());
    for (int d = a.degree(); d >= b.degree(); --d) {
        uint8_t top = rem.coeff(d);
        if (top == 0) continue;
        uint8_t f = fs.mul(top, lead_inv);
        int off = d - b.degree();
        quot.c[off] = f;
        for (size_t i = 0; i < b.c.size(); ++i) rem.c[off + i] ^= fs.mul(f, b.c[i]);
    }
    rem.trim();
    quot.trim();
    return {quot, rem};
}

Poly poly_mod(const FieldSpec& fs, const Poly& a, const Poly& b) { return poly_divmod(fs, a, b).second; }

bool poly_divides(const FieldSpec& fs, const Poly& d, const Poly& a) {
    return poly_mod(fs, a, d).is_zero();
}

Poly poly_gcd(const FieldSpec& fs, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(fs, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.sgn() != 1) a = poly_scale(fs, a, fs.inv(a.sgn()));
    return a;
}

Poly poly_pow(const FieldSpec& fs, Poly base, unsigned e) {
    Poly r = Poly::constant(1);
    while (e) {
        if (e & 1) r = poly_mul(fs, r, base);
        base = poly_mul(fs, base, base);
        e >>= 1;
    }
    return r;
}

Poly monic_from_rank(const FieldSpec& fs, int d, uint64_t rank) {
    Poly r;
    r.c.assign(static_cast<size_t>(d) + 1, 0);
    r.c[d] = 1;
    for (int i = d - 1; i >= 0; --i) {  // c_0 is the most significant digit
        r.c[i] = static_cast<uint8_t>(rank % fs.q);
        rank /= fs.q;
    }
    return r;
}

uint64_t rank_of_monic(const FieldSpec& fs, const Poly& f) {
    int d = f.degree();
    uint64_t rank = 0;
    for (int i = 0; i < d; ++i) rank = rank * fs.q + f.coeff(i);
    return rank;
}

Poly residue_from_rank(const FieldSpec& fs, int d, uint64_t rank) {
    Poly r;
    r.c.assign(static_cast<size_t>(d), 0);
    for (int i = d - 1; i >= 0; --i) {
        r.c[i] = static_cast<uint8_t>(rank % fs.q);
        rank /= fs.q;
    }
    r.trim();
    return r;
}

uint64_t rank_of_residue(const FieldSpec& fs, int d, const Poly& f) {
    uint64_t rank = 0;
    for (int i = 0; i < d; ++i) rank = rank * fs.q + f.coeff(i);
    return rank;
}

namespace {
char digit_char(uint8_t v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }
uint8_t digit_val(char ch) {
    if (ch >= '0' && ch <= '9') return static_cast<uint8_t>(ch - '0');
    if (ch >= 'a' && ch <= 'f') return static_cast<uint8_t>(ch - 'a' + 10);
    throw std::invalid_argument("bad coefficient digit");
}
}  // namespace

std::string poly_to_string(const FieldSpec&, const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    s.reserve(f.c.size());
    for (uint8_t v : f.c) s.push_back(digit_char(v));
    return s;
}

Poly poly_from_string(const FieldSpec&, const std::string& s) {
    if (s == "0") return Poly::zero();
    Poly r;
    r.c.reserve(s.size());
    for (char ch : s) r.c.push_back(digit_val(ch));
    r.trim();
    return r;
}

std::string poly_pretty(const FieldSpec&, const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        uint8_t v = f.coeff(i);
        if (v == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(static_cast<int>(v));
        } else {
            if (v != 1) s += std::to_string(static_cast<int>(v)) + "*";
            s += (i == 1) ? "T" : "T^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace eclab
