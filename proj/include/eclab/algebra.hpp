#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eclab/poly.hpp"

namespace eclab::algebra {

/// Directory for on-disk caches (irreducible tables, Euler product partial
/// sums).  Resolution: value set here (CLI flag) > ECLAB_CACHE_DIR > empty.
/// An empty directory disables disk caching; in-memory tables still work.
void set_cache_dir(const std::string& dir);
std::string cache_dir();

/// Visit the q^d monic polynomials of degree d in rank order.
void for_each_monic(const FieldSpec& fs, int d, const std::function<void(const Poly&)>& fn);
std::vector<Poly> monic_polys(const FieldSpec& fs, int d);

/// All monic irreducibles of degree d, rank order.  Backed by a per-q
/// in-memory table built once (trial division) and mirrored to disk as
/// irreducibles_q<q>_maxdeg<d>.txt when a cache directory is configured.
const std::vector<Poly>& irreducibles(const FieldSpec& fs, int d);
void warm_irreducibles(const FieldSpec& fs, int maxdeg);

/// Number of monic irreducibles of degree d from the divisor-sum formula;
/// used by Euler products and as the counting oracle in tests.  The exact
/// version throws once q^d no longer fits in 64 bits; the double version
/// stays accurate to one ulp at any degree.
uint64_t irreducible_count(int q, int d);
double irreducible_count_double(int q, int d);

int int_mobius(int n);

struct Factorization {
    uint8_t unit = 1;
    std::vector<std::pair<Poly, int>> primes;  // sorted by (degree, rank), exponents >= 1
};

Factorization factorize(const FieldSpec& fs, const Poly& f);
Poly unfactorize(const FieldSpec& fs, const Factorization& fac);

int mobius(const FieldSpec& fs, const Poly& f);
uint64_t phi(const FieldSpec& fs, const Poly& f);

/// Residue-field operations modulo an irreducible P.
Poly residue_reduce(const FieldSpec& fs, const Poly& a, const Poly& P);
Poly residue_invert(const FieldSpec& fs, const Poly& a, const Poly& P);
/// Absolute trace of the class of a from F_q[T]/(P) down to F_2, computed by
/// summing Frobenius iterates a^(2^i).  Value in {0,1}.
int trace_to_F2(const FieldSpec& fs, const Poly& a, const Poly& P);

/// Sum of phi(f) over monic f of degree n coprime to L, exact.
uint64_t sum_phi_coprime(const FieldSpec& fs, int n, const Poly& L);

}  // namespace eclab::algebra
