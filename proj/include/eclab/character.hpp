#pragma once

#include <cstdint>
#include <vector>

#include "eclab/algebra.hpp"
#include "eclab/family.hpp"
#include "eclab/poly.hpp"

namespace eclab::character {

/// Hasse symbol [u,P) in {0,1}: 0 iff X^2 + X = u is solvable modulo P.
/// Throws std::domain_error when P divides the denominator of u.
int hasse(const FieldSpec& fs, const family::Discriminant& u, const Poly& P);

/// Quadratic character chi_u(f) in {-1,0,+1} for monic f; 0 when f shares a
/// prime with the denominator of u.
int chi(const FieldSpec& fs, const family::Discriminant& u, const Poly& f);

/// Sweep engine: everything that depends only on (q, family size bounds) is
/// precomputed once, so per-discriminant work is a few table walks.  The
/// tables are immutable after construction; symbols() is safe to call from
/// many threads.
class SymbolEngine {
  public:
    /// family_n: the n of the family being swept (bounds support primes and
    /// the polynomial part).  max_f_degree: Dirichlet sums run over monic f
    /// up to this degree, so symbols cover all primes up to it.
    SymbolEngine(const FieldSpec& fs, int family_n, int max_f_degree);

    const FieldSpec& field() const { return fs_; }
    int max_f_degree() const { return max_f_degree_; }
    int prime_count() const { return static_cast<int>(primes_.size()); }
    const std::vector<Poly>& primes() const { return primes_; }
    int prime_degree(int id) const { return prime_deg_[id]; }
    /// id of a monic irreducible, -1 if not tracked.
    int prime_id(const Poly& P) const;

    /// Fills out[0..prime_count) with chi_u(P) for every tracked prime.
    void symbols(const family::Discriminant& u, int8_t* out) const;

    /// chi_u(f) for monic f of given degree and enumeration rank, from a
    /// symbol vector produced by symbols().
    int chi_from_symbols(const int8_t* sym, int deg, uint64_t rank) const;

    /// Dirichlet coefficients c_0..c_N (sums of chi over monic f of each
    /// degree); N <= max_f_degree.
    void dirichlet_coeffs(const int8_t* sym, int N, long long* c) const;

  private:
    const FieldSpec& fs_;
    int family_n_;
    int max_f_degree_;
    int max_support_degree_;
    int max_power_index_;  // powers P^{2i+1}, i < max_power_index_

    std::vector<Poly> primes_;       // all monic irreducibles of degree <= max bound
    std::vector<int> prime_deg_;
    std::vector<int> prime_offset_;  // first id of each degree
    std::vector<std::vector<int32_t>> prime_id_by_rank_;  // per degree

    static constexpr int kMaxDeg = 16;
    // inv_pow_[((sid * max_power_index_) + i) * prime_count + pid] =
    //   (S^{2i+1})^{-1} mod P, packed into kMaxDeg bytes
    std::vector<uint8_t> inv_pow_;
    int support_prime_count_ = 0;
    // t_pow_[pid][j] = T^j mod P, j <= 2*family_n - 1, packed
    std::vector<uint8_t> t_pow_;
    int t_pow_len_ = 0;
    // absolute trace as an F_2-linear functional: per prime, a parity mask
    // over the m*deg(P) coefficient bits of the residue
    std::vector<uint32_t> trace_mask_;

    // factorization table of monic f: per degree, per rank, a slice of pairs
    struct Slice { uint32_t begin, end; };
    std::vector<std::vector<Slice>> ftab_;
    std::vector<std::pair<uint16_t, uint8_t>> fpairs_;

    const uint8_t* inv_pow_entry(int sid, int i, int pid) const {
        return &inv_pow_[((static_cast<size_t>(sid) * max_power_index_ + i) * primes_.size() + pid) * kMaxDeg];
    }
    const uint8_t* t_pow_entry(int pid, int j) const {
        return &t_pow_[(static_cast<size_t>(pid) * t_pow_len_ + j) * kMaxDeg];
    }
};

}  // namespace eclab::character
