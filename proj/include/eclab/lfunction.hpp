#pragma once

#include <complex>
#include <string>
#include <vector>

#include "eclab/character.hpp"
#include "eclab/family.hpp"
#include "eclab/rational.hpp"

namespace eclab::lfunction {

/// Completed L-polynomial of a quadratic character: exact integer
/// coefficients of degree 2g with the symmetry c_j = q^{j-g} c_{2g-j}.
struct LPolynomial {
    int q = 2;
    int g = 0;
    family::Kind kind = family::Kind::ramified_imaginary;
    std::string source_key;
    std::vector<long long> c;  // c_0 .. c_{2g}
};

/// Dirichlet coefficients c_n = sum of chi_u over monic f of degree n,
/// n = 0..N, by direct enumeration.
std::vector<long long> dirichlet_coeffs(const FieldSpec& fs, const family::Discriminant& u, int N);

/// Completed L-polynomial: for ramified u the series itself; for real /
/// inert u the series divided exactly by (1-z) / (1+z).  The upper half is
/// filled from the functional equation; the overlap coefficient is
/// recomputed independently and must match.
LPolynomial l_star(const FieldSpec& fs, const family::Discriminant& u);
/// Same, but driven by a SymbolEngine (sweep fast path).  scratch must hold
/// engine.prime_count() bytes.
LPolynomial l_star_fast(const character::SymbolEngine& eng, const family::Discriminant& u,
                        int8_t* scratch);

std::complex<double> evaluate_z(const LPolynomial& L, std::complex<double> z);
/// Evaluation at s via z = q^{-s}.
std::complex<double> evaluate(const LPolynomial& L, std::complex<double> s);

/// L*(q^{-1/2}) split exactly as a + b q^{-1/2}.
CentralValue central_value(const LPolynomial& L);
/// The series value L(1/2, chi_u) itself: multiplies back the trivial-zero
/// factor (1 -+ q^{-1/2}) for real / inert kinds.
CentralValue series_value_half(const LPolynomial& L);

/// Approximate functional equation evaluation for ramified u (an exact
/// identity for these L-functions): character sums over deg f <= g plus
/// q^{(1-2s)g} times sums over deg f <= g-1.
std::complex<double> afe_evaluate(const FieldSpec& fs, const family::Discriminant& u,
                                  std::complex<double> s);

/// All 2g zeros in z, sorted by angle, plus ordinates gamma with
/// z = q^{-1/2} e^{i theta}, gamma = -theta / log q in (-pi/log q, pi/log q].
struct Zeros {
    std::vector<std::complex<double>> z;
    std::vector<double> ordinates;
};
Zeros zeros(const LPolynomial& L);

/// Roots of a complex polynomial by Durand-Kerner iteration in extended
/// precision.  Throws std::runtime_error on non-convergence, echoing the
/// coefficients.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs);

}  // namespace eclab::lfunction
