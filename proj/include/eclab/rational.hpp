#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eclab {

/// Exact rational on 128-bit integers, always normalized (den > 0, gcd 1).
/// Desk-scale family sums stay far below the overflow range; there is no
/// arbitrary-precision fallback.
struct Rat {
    __int128 num = 0;
    __int128 den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(__int128 n, __int128 d) : num(n), den(d) { normalize(); }

    static Rat zero() { return Rat(); }
    static Rat one() { return Rat(1); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        __int128 a = num < 0 ? -num : num, b = den;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
    }

    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::domain_error("Rat: division by zero");
        return Rat(num * o.den, den * o.num);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num = -r.num;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool is_zero() const { return num == 0; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        auto i128_str = [](__int128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
            std::string s;
            while (u) {
                s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
                u /= 10;
            }
            if (neg) s.push_back('-');
            std::reverse(s.begin(), s.end());
            return s;
        };
        std::string s = i128_str(num);
        if (den != 1) s += "/" + i128_str(den);
        return s;
    }
};

/// Exact value a + b*q^{-1/2} with a, b rational.  Closed under products
/// since (q^{-1/2})^2 = 1/q, so central values and their powers stay exact.
struct CentralValue {
    Rat a;  // rational part
    Rat b;  // coefficient of q^{-1/2}
    int q = 2;

    CentralValue() = default;
    explicit CentralValue(int q_) : q(q_) {}
    CentralValue(Rat a_, Rat b_, int q_) : a(a_), b(b_), q(q_) {}

    double value() const { return a.to_double() + b.to_double() / std::sqrt(static_cast<double>(q)); }

    CentralValue operator+(const CentralValue& o) const {
        check(o);
        return {a + o.a, b + o.b, q};
    }
    CentralValue operator*(const CentralValue& o) const {
        check(o);
        Rat invq(1, q);
        return {a * o.a + b * o.b * invq, a * o.b + b * o.a, q};
    }
    CentralValue& operator+=(const CentralValue& o) { return *this = *this + o; }

    CentralValue pow(int k) const {
        CentralValue r(Rat::one(), Rat::zero(), q);
        CentralValue base = *this;
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    bool operator==(const CentralValue& o) const { return a == o.a && b == o.b && q == o.q; }

    std::string to_string() const { return a.to_string() + " + (" + b.to_string() + ")*q^(-1/2)"; }

  private:
    void check(const CentralValue& o) const {
        if (q != o.q) throw std::invalid_argument("CentralValue: mixed base fields");
    }
};

}  // namespace eclab
