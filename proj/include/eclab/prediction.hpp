#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "eclab/rational.hpp"
#include "eclab/series.hpp"

namespace eclab::prediction {

using Complex = std::complex<double>;

/// zeta of the polynomial ring: (1 - q^{1-s})^{-1}; pole at s = 1 mod
/// 2 pi i / log q is signaled as an infinity.
Complex zeta_A(Complex s, int q);
Complex inv_zeta_A(Complex s, int q);         // 1 - q^{1-s}, entire
Complex zeta_A_logderiv(Complex s, int q);    // zeta'/zeta
Complex X_factor(Complex s, int q);           // q^{s - 1/2}

/// Truncated Euler product over monic irreducibles, grouped by degree so the
/// value is reproducible bit-for-bit for a given (q, D).
struct EulerProductValue {
    double value = 1.0;
    int truncation_degree = 0;
    double tail_estimate = 0.0;           // bound on the missing |log| mass
    std::vector<double> per_degree_log;   // per_degree_log[d-1]: this degree's log contribution
};

struct EulerP {
    EulerProductValue p1;        // P(1) = prod (1 - 1/(|P|(|P|+1)))
    EulerProductValue logderiv;  // (P'/P)(1), accumulated as a sum
};
EulerP euler_P(int q, int D);

/// Jet of the shifted-moment arithmetic factor A(1/2; z_1..z_k) around 0.
/// ord: per-variable order, tord: total order.  Constant term equals the
/// product value at the origin.
series::MultiSeries A_jet(int k, int q, int D, int ord, int tord);

/// Closed-form products for the moment constants, k in {2,3,4,5}.
EulerProductValue A_closed(int k, int q, int D);

/// Moment polynomial Q_k produced by the k-fold residue of the
/// zeta/arithmetic-factor integrand (degree k(k+1)/2 in x).
struct QkPolynomial {
    int k = 1;
    int q = 2;
    int D = 0;
    int ord = 0;
    series::XPoly poly;
};
QkPolynomial q_k(int k, int q, int D);
/// First moment polynomial in closed form: (1/2) P(1) (x + 1 + (4/log q)(P'/P)(1)).
series::XPoly q1_closed(int q, int D);

/// Q_2 and Q_3 assembled from partial derivatives of the A-jet (the
/// independent cross-check of the residue engine).
series::XPoly q2_from_partials(int q, const series::MultiSeries& jet);
series::XPoly q3_from_partials(int q, const series::MultiSeries& jet);

/// 2^{k(k+1)/2 + 1} * prod_{j<=k} j!/(2j)!, exact.
Rat leading_constant(int k);

double family_size_I(int q, int n);
/// #I_{g+1} * Q_k(2g+1); k = 0 degenerates to the family size.
double moment_prediction(int k, int q, int g, int D);

/// Closed-form first-moment main terms for the three families.
double first_moment_main_I(int q, int g, int D);
double first_moment_main_F(int q, int g, int D);
double first_moment_main_Fprime(int q, int g, int D);

/// Ratios-side Euler factors for shift lists (K = alphas, Q = gammas).
Complex ratios_Y(const std::vector<Complex>& alphas, const std::vector<Complex>& gammas, int q);
Complex ratios_A(const std::vector<Complex>& alphas, const std::vector<Complex>& gammas, int q, int D);
/// d/dalpha A at alpha = gamma = r (K = Q = 1): sum over P of
/// log|P| / ((|P|^{1+2r} - 1)(|P| + 1)).
Complex ratios_A_prime_rr(Complex r, int q, int D);

/// One-ratio average prediction over I_{g+1} (K = Q = 1).
double ratio_prediction(double alpha, double gamma, int q, int g, int D);
/// Sum of L'/L(1/2 + r) over the family.
double logderiv_prediction(double r, int q, int g, int D);

/// One-level density prediction: (1/2pi) integral of h against the
/// family-averaged log-derivative combination over one period.
double density_prediction(const std::function<double(double)>& h, int q, int g, int D, int panels = 400);

/// integral of h(tau) (1 - sin(2 pi tau)/(2 pi tau)) d tau by composite
/// Gauss panels over [-tau_max, tau_max].
double scaled_density_limit(const std::function<double(double)>& h, double tau_max = 1.0e6,
                            double panel_width = 0.5);

/// Two-shift consistency pair: the sign-sum over (+-a1, +-a2) of the
/// zeta/arithmetic-factor product, and the same value recovered from the
/// residue bookkeeping of the contour form.  Equal up to roundoff.
double shifted_sum_direct(double a1, double a2, int q, int g, int D);
double shifted_sum_residue(double a1, double a2, int q, int g, int D);

/// Per-degree log cache for scalar Euler products ("P1", "PlogD", "A2"..).
/// Stored one line per degree as `d <hexfloat>`; extended on demand.
std::vector<double> euler_degree_logs(int q, const std::string& product_id, int D,
                                      const std::function<double(int)>& per_degree);

}  // namespace eclab::prediction
