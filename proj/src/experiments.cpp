#include "eclab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "eclab/character.hpp"
#include "eclab/prediction.hpp"
#include "eclab/sweep.hpp"

namespace eclab::experiments {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct MomentAcc {
    CentralValue sum;
    MomentAcc& operator+=(const MomentAcc& o) {
        sum += o.sum;
        return *this;
    }
};

struct RatioAcc {
    double sum = 0.0;
    uint64_t excluded = 0;
    RatioAcc& operator+=(const RatioAcc& o) {
        sum += o.sum;
        excluded += o.excluded;
        return *this;
    }
};

struct DensityAcc {
    double sum = 0.0;
    DensityAcc& operator+=(const DensityAcc& o) {
        sum += o.sum;
        return *this;
    }
};

struct HistAcc {
    std::vector<uint64_t> count;
    HistAcc& operator+=(const HistAcc& o) {
        if (count.size() < o.count.size()) count.resize(o.count.size(), 0);
        for (size_t i = 0; i < o.count.size(); ++i) count[i] += o.count[i];
        return *this;
    }
};

struct LongAcc {
    long long v = 0;
    LongAcc& operator+=(const LongAcc& o) {
        v += o.v;
        return *this;
    }
};

int coeff_degree_needed(family::Set which, int n) {
    // ramified members need c_0..c_g; real/inert need the raw series to g+1
    return which == family::Set::I ? n - 1 : n;
}

MomentResult empirical_moment_impl(int k, int q, int n, family::Set which, bool parallel) {
    if (k < 0 || n < 1) throw std::invalid_argument("empirical_moment: k >= 0 and n >= 1 required");
    const FieldSpec& fs = FieldSpec::get(q);
    auto members = family::enumerate(fs, which, n);
    MomentResult out;
    out.family_size = members.size();
    if (k == 0) {
        out.exact = CentralValue(Rat(static_cast<long long>(members.size())), Rat(0), q);
        out.value = static_cast<double>(members.size());
        return out;
    }
    character::SymbolEngine eng(fs, n, std::max(coeff_degree_needed(which, n), 0));
    auto make_worker = [&] {
        return [&eng, k, which, buf = std::vector<int8_t>(static_cast<size_t>(eng.prime_count()))](
                   const family::Discriminant& u, MomentAcc& acc) mutable {
            lfunction::LPolynomial L = lfunction::l_star_fast(eng, u, buf.data());
            CentralValue v = which == family::Set::I ? lfunction::central_value(L)
                                                     : lfunction::series_value_half(L);
            acc.sum += v.pow(k);
        };
    };
    MomentAcc init{CentralValue(Rat(0), Rat(0), q)};
    MomentAcc total = parallel ? chunked_sweep(members, make_worker, init)
                               : serial_sweep(members, make_worker, init);
    out.exact = total.sum;
    out.value = total.sum.value();
    return out;
}

}  // namespace

double relative_deviation(double empirical, double predicted) {
    return std::abs(empirical - predicted) / std::max(std::abs(predicted), 1e-300);
}

int default_moment_degree(int q) { return q == 2 ? 18 : 9; }

MomentResult empirical_moment(int k, int q, int n, bool parallel) {
    return empirical_moment_impl(k, q, n, family::Set::I, parallel);
}

MomentResult empirical_moment_FFprime(int k, int q, int n, family::Set which, bool parallel) {
    if (which != family::Set::F && which != family::Set::Fprime)
        throw std::invalid_argument("empirical_moment_FFprime: which must be F or Fprime");
    return empirical_moment_impl(k, q, n, which, parallel);
}

Rat empirical_char_average(const Poly& m, int q, int n) {
    const FieldSpec& fs = FieldSpec::get(q);
    if (m.is_zero() || !m.monic()) throw std::invalid_argument("empirical_char_average: monic m required");
    auto members = family::enumerate(fs, family::Set::I, n);
    auto make_worker = [&] {
        return [&fs, &m](const family::Discriminant& u, LongAcc& acc) { acc.v += character::chi(fs, u, m); };
    };
    LongAcc total = chunked_sweep(members, make_worker, LongAcc{});
    return Rat(total.v, static_cast<long long>(members.size()));
}

RatioResult empirical_ratio(double alpha, double gamma, int q, int n) {
    const FieldSpec& fs = FieldSpec::get(q);
    auto members = family::enumerate(fs, family::Set::I, n);
    character::SymbolEngine eng(fs, n, std::max(n - 1, 0));
    const double lq = std::log(static_cast<double>(q));
    const double z_num = std::exp(-(0.5 + alpha) * lq);
    const double z_den = std::exp(-(0.5 + gamma) * lq);
    auto make_worker = [&] {
        return [&eng, z_num, z_den, buf = std::vector<int8_t>(static_cast<size_t>(eng.prime_count()))](
                   const family::Discriminant& u, RatioAcc& acc) mutable {
            lfunction::LPolynomial L = lfunction::l_star_fast(eng, u, buf.data());
            auto eval = [&](double z) {
                double v = 0.0;
                for (size_t i = L.c.size(); i-- > 0;) v = v * z + static_cast<double>(L.c[i]);
                return v;
            };
            double den = eval(z_den);
            if (std::abs(den) < 1e-12) {
                ++acc.excluded;
                return;
            }
            acc.sum += eval(z_num) / den;
        };
    };
    RatioAcc total = chunked_sweep(members, make_worker, RatioAcc{});
    return {total.sum, total.excluded, members.size()};
}

double empirical_density(const std::function<double(double)>& h, int q, int n) {
    const FieldSpec& fs = FieldSpec::get(q);
    auto members = family::enumerate(fs, family::Set::I, n);
    character::SymbolEngine eng(fs, n, std::max(n - 1, 0));
    auto make_worker = [&] {
        return [&eng, &h, buf = std::vector<int8_t>(static_cast<size_t>(eng.prime_count()))](
                   const family::Discriminant& u, DensityAcc& acc) mutable {
            lfunction::LPolynomial L = lfunction::l_star_fast(eng, u, buf.data());
            lfunction::Zeros zs = lfunction::zeros(L);
            for (double g : zs.ordinates) acc.sum += h(g);
        };
    };
    DensityAcc total = chunked_sweep(members, make_worker, DensityAcc{});
    return total.sum;
}

Histogram scaled_histogram(int q, int n, int bins, double tau_max) {
    if (bins < 1 || tau_max <= 0) throw std::invalid_argument("scaled_histogram: bad binning");
    const FieldSpec& fs = FieldSpec::get(q);
    auto members = family::enumerate(fs, family::Set::I, n);
    character::SymbolEngine eng(fs, n, std::max(n - 1, 0));
    const double lq = std::log(static_cast<double>(q));
    const int g = n - 1;
    const double scale = (2.0 * g * lq) / (2.0 * std::numbers::pi);
    const double width = 2.0 * tau_max / bins;
    auto make_worker = [&] {
        return [&eng, bins, tau_max, width, scale,
                buf = std::vector<int8_t>(static_cast<size_t>(eng.prime_count()))](
                   const family::Discriminant& u, HistAcc& acc) mutable {
            if (acc.count.empty()) acc.count.assign(static_cast<size_t>(bins), 0);
            lfunction::LPolynomial L = lfunction::l_star_fast(eng, u, buf.data());
            lfunction::Zeros zs = lfunction::zeros(L);
            for (double gam : zs.ordinates) {
                double tau = gam * scale;
                int b = static_cast<int>(std::floor((tau + tau_max) / width));
                if (b >= 0 && b < bins) ++acc.count[static_cast<size_t>(b)];
            }
        };
    };
    HistAcc total = chunked_sweep(members, make_worker, HistAcc{});
    if (total.count.empty()) total.count.assign(static_cast<size_t>(bins), 0);
    Histogram hist;
    hist.count = total.count;
    hist.center.resize(static_cast<size_t>(bins));
    hist.density.resize(static_cast<size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        hist.center[static_cast<size_t>(b)] = -tau_max + (b + 0.5) * width;
        hist.density[static_cast<size_t>(b)] =
            static_cast<double>(total.count[static_cast<size_t>(b)]) /
            (static_cast<double>(members.size()) * width);
    }
    return hist;
}

std::function<double(double)> test_function(const std::string& name, int q) {
    if (name == "one") return [](double) { return 1.0; };
    if (name.rfind("fejer", 0) == 0) {
        int J = std::stoi(name.substr(5));
        if (J < 0 || J > 64) throw std::invalid_argument("test_function: fejer order out of range");
        double lq = std::log(static_cast<double>(q));
        return [J, lq](double t) {
            double s = 0.0;
            for (int j = -J; j <= J; ++j) s += (1.0 - std::abs(j) / (J + 1.0)) * std::cos(j * lq * t);
            return s;
        };
    }
    throw std::invalid_argument("test_function: unknown name " + name);
}

std::string Report::csv_header() {
    return "kind,q,n,k,alpha,gamma,D,empirical,predicted,relative_deviation,family_size,excluded,seconds";
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << kind << ',' << q << ',' << n << ',' << k << ',' << alpha << ',' << gamma << ',' << D << ','
       << empirical << ',' << predicted << ',' << relative_deviation << ',' << family_size << ','
       << excluded << ',' << seconds;
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::json j{{"kind", kind},
                     {"q", q},
                     {"n", n},
                     {"k", k},
                     {"alpha", alpha},
                     {"gamma", gamma},
                     {"D", D},
                     {"empirical", empirical},
                     {"predicted", predicted},
                     {"relative_deviation", relative_deviation},
                     {"family_size", family_size},
                     {"excluded", excluded},
                     {"seconds", seconds}};
    if (!empirical_exact.empty()) j["empirical_exact"] = empirical_exact;
    return j.dump();
}

std::vector<std::string> compare_kinds() {
    return {"moment", "moment_F", "moment_Fprime", "char_average", "ratio", "density"};
}

Report compare(const std::string& kind, const CompareParams& p) {
    const FieldSpec& fs = FieldSpec::get(p.q);
    Report r;
    r.kind = kind;
    r.q = p.q;
    r.n = p.n;
    r.k = p.k;
    r.alpha = p.alpha;
    r.gamma = p.gamma;
    auto t0 = Clock::now();
    const int g = p.n - 1;

    if (kind == "moment") {
        r.D = p.D > 0 ? p.D : default_moment_degree(p.q);
        auto emp = empirical_moment(p.k, p.q, p.n);
        r.empirical = emp.value;
        r.empirical_exact = emp.exact.to_string();
        r.family_size = emp.family_size;
        r.predicted = prediction::moment_prediction(p.k, p.q, g, r.D);
    } else if (kind == "moment_F" || kind == "moment_Fprime") {
        if (p.k != 1)
            throw std::invalid_argument("compare: only the first moment has an F/F' prediction");
        r.D = p.D > 0 ? p.D : default_moment_degree(p.q);
        bool prime = kind == "moment_Fprime";
        auto emp = empirical_moment_FFprime(1, p.q, p.n, prime ? family::Set::Fprime : family::Set::F);
        r.empirical = emp.value;
        r.empirical_exact = emp.exact.to_string();
        r.family_size = emp.family_size;
        r.predicted = prime ? prediction::first_moment_main_Fprime(p.q, g, r.D)
                            : prediction::first_moment_main_F(p.q, g, r.D);
    } else if (kind == "char_average") {
        r.D = 0;
        Poly m = poly_from_string(fs, p.m);
        Rat avg = empirical_char_average(m, p.q, p.n);
        r.empirical = avg.to_double();
        r.empirical_exact = avg.to_string();
        r.family_size = family::expected_count(fs, family::Set::I, p.n);
        // limit: prod over P | m of (1 + 1/|P|)^{-1} when m is a square, else 0
        auto fac = algebra::factorize(fs, m);
        bool square = true;
        for (const auto& [prime, e] : fac.primes)
            if (e % 2) square = false;
        double am = 1.0;
        for (const auto& [prime, e] : fac.primes)
            am /= 1.0 + 1.0 / static_cast<double>(norm(fs, prime));
        r.predicted = square ? am : 0.0;
    } else if (kind == "ratio") {
        r.D = p.D > 0 ? p.D : kRatiosDegree;
        auto emp = empirical_ratio(p.alpha, p.gamma, p.q, p.n);
        r.empirical = emp.value;
        r.family_size = emp.family_size;
        r.excluded = emp.excluded;
        r.predicted = prediction::ratio_prediction(p.alpha, p.gamma, p.q, g, r.D);
    } else if (kind == "density") {
        r.D = p.D > 0 ? p.D : kRatiosDegree;
        auto h = test_function(p.h, p.q);
        r.empirical = empirical_density(h, p.q, p.n);
        r.family_size = family::expected_count(fs, family::Set::I, p.n);
        r.predicted = prediction::density_prediction(h, p.q, g, r.D, 64);
    } else {
        throw std::invalid_argument("compare: unknown kind " + kind);
    }
    r.relative_deviation = relative_deviation(r.empirical, r.predicted);
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace eclab::experiments
