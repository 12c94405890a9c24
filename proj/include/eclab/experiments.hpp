#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eclab/family.hpp"
#include "eclab/lfunction.hpp"
#include "eclab/rational.hpp"

namespace eclab::experiments {

/// One empirical-vs-predicted comparison record.
struct Report {
    std::string kind;
    int q = 2;
    int n = 0;
    int k = -1;
    double alpha = 0.0;
    double gamma = 0.0;
    int D = 0;
    std::string empirical_exact;  // exact rational form when available
    double empirical = 0.0;
    double predicted = 0.0;
    double relative_deviation = 0.0;
    uint64_t family_size = 0;
    uint64_t excluded = 0;
    double seconds = 0.0;

    static std::string csv_header();
    std::string to_csv() const;
    std::string to_json() const;
};

double relative_deviation(double empirical, double predicted);

/// Default Euler truncation degrees: the moment products decay like
/// |P|^{-2} and are tail-safe at 18/9; the ratios products decay slowly at
/// the shifts of interest and get a deeper default.
int default_moment_degree(int q);
inline constexpr int kRatiosDegree = 40;

struct MomentResult {
    CentralValue exact;
    double value = 0.0;
    uint64_t family_size = 0;
};

/// Sum over the family of the k-th power of the central value, exact in
/// the form a + b q^{-1/2}.  I-family uses L(1/2) = L*(q^{-1/2}); the real
/// and inert families restore the trivial-zero factor.
MomentResult empirical_moment(int k, int q, int n, bool parallel = true);
MomentResult empirical_moment_FFprime(int k, int q, int n, family::Set which, bool parallel = true);

/// (1/#I_n) sum of chi_u(m), exact.
Rat empirical_char_average(const Poly& m, int q, int n);

struct RatioResult {
    double value = 0.0;
    uint64_t excluded = 0;
    uint64_t family_size = 0;
};
/// Sum over I_n of L(1/2+alpha)/L(1/2+gamma); members whose denominator
/// value falls under 1e-12 are excluded and counted.
RatioResult empirical_ratio(double alpha, double gamma, int q, int n);

/// Sum of h over every zero ordinate of every member of I_n.
double empirical_density(const std::function<double(double)>& h, int q, int n);

struct Histogram {
    std::vector<double> center;
    std::vector<uint64_t> count;
    std::vector<double> density;  // count / (#family * bin width)
};
/// Histogram of scaled ordinates tau = gamma_u * (2 g log q) / (2 pi).
Histogram scaled_histogram(int q, int n, int bins, double tau_max);

/// Named test functions for the density comparisons: "one", "fejer1".."fejer5"
/// (nonnegative even trigonometric kernels with period 2 pi / log q).
std::function<double(double)> test_function(const std::string& name, int q);

/// Comparison scenarios pairing an empirical quantity with its prediction.
/// kinds: moment (I family), moment_F, moment_Fprime, char_average, ratio,
/// density.
struct CompareParams {
    int q = 4;
    int n = 3;
    int k = 1;
    double alpha = 0.3;
    double gamma = 0.24;
    int D = 0;  // 0: per-kind default
    std::string h = "fejer3";
    std::string m = "001";  // base-q coefficient string, default T^2
};
Report compare(const std::string& kind, const CompareParams& params);
std::vector<std::string> compare_kinds();

}  // namespace eclab::experiments
