// eclab: compute quadratic Dirichlet L-functions over F_q(T) in even
// characteristic, their family statistics, and the conjecture-side
// predictions, then compare the two.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eclab/algebra.hpp"
#include "eclab/character.hpp"
#include "eclab/experiments.hpp"
#include "eclab/prediction.hpp"
#include "eclab/scenarios.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace eclab;

struct Output {
    std::string path;
    std::ofstream file;
    std::ostream& stream() {
        if (!path.empty() && !file.is_open()) {
            file.open(path, std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open output file " + path);
        }
        return path.empty() ? std::cout : file;
    }
};

void emit_report(Output& out, const experiments::Report& r, const std::string& format, bool& wrote_header) {
    if (format == "csv") {
        if (!wrote_header) {
            out.stream() << experiments::Report::csv_header() << "\n";
            wrote_header = true;
        }
        out.stream() << r.to_csv() << "\n";
    } else {
        out.stream() << r.to_json() << "\n";
    }
}

int validated_q(int q) {
    if (q != 2 && q != 4 && q != 8 && q != 16)
        throw std::invalid_argument("--q must be one of 2, 4, 8, 16");
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"even-characteristic quadratic L-function laboratory"};
    app.require_subcommand(1);

    std::string cache_dir_flag;
    int threads = 0;
    app.add_option("--cache-dir", cache_dir_flag,
                   "directory for irreducible/Euler caches (default: ECLAB_CACHE_DIR)");
    app.add_option("--threads", threads, "worker threads for family sweeps (default: all)");

    std::string format = "json";
    Output out;
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out.path, "write output to a file instead of stdout");

    // family
    auto* fam = app.add_subcommand("family", "enumerate discriminant families");
    fam->fallthrough();
    std::string fam_action = "count", fam_set = "I";
    int fam_q = 2, fam_n = 2;
    fam->add_option("action", fam_action, "count or dump")->check(CLI::IsMember({"count", "dump"}));
    fam->add_option("--q", fam_q, "field size")->required();
    fam->add_option("--n", fam_n, "family index n")->required();
    fam->add_option("--set", fam_set, "B, G, F, Fprime, or I");

    // lvalues
    auto* lv = app.add_subcommand("lvalues", "dump completed L-polynomial coefficients as CSV");
    lv->fallthrough();
    int lv_q = 2, lv_n = 2;
    std::string lv_set = "I";
    lv->add_option("--q", lv_q)->required();
    lv->add_option("--n", lv_n)->required();
    lv->add_option("--set", lv_set, "F, Fprime, or I");

    // moment
    auto* mo = app.add_subcommand("moment", "family moment of central values vs prediction");
    mo->fallthrough();
    experiments::CompareParams mo_p;
    std::string mo_set = "I";
    mo->add_option("--q", mo_p.q)->required();
    mo->add_option("--k", mo_p.k, "moment order");
    mo->add_option("--n", mo_p.n, "family index n = g+1")->required();
    mo->add_option("--set", mo_set, "I, F, or Fprime");
    mo->add_option("--trunc-deg", mo_p.D, "Euler product truncation degree");

    // ratios
    auto* ra = app.add_subcommand("ratios", "ratio average over I_n vs prediction");
    ra->fallthrough();
    experiments::CompareParams ra_p;
    ra->add_option("--q", ra_p.q)->required();
    ra->add_option("--n", ra_p.n)->required();
    ra->add_option("--alpha", ra_p.alpha)->required();
    ra->add_option("--gamma", ra_p.gamma)->required();
    ra->add_option("--trunc-deg", ra_p.D);

    // density
    auto* de = app.add_subcommand("density", "one-level density vs prediction, or histogram");
    de->fallthrough();
    experiments::CompareParams de_p;
    bool de_hist = false;
    int de_bins = 40;
    double de_tau = 3.0;
    de->add_option("--q", de_p.q)->required();
    de->add_option("--n", de_p.n)->required();
    de->add_option("--kernel", de_p.h, "test function: one, fejer1..fejer5");
    de->add_option("--trunc-deg", de_p.D);
    de->add_flag("--histogram", de_hist, "emit the scaled-ordinate histogram as CSV");
    de->add_option("--bins", de_bins);
    de->add_option("--tau-max", de_tau);

    // conjecture
    auto* co = app.add_subcommand("conjecture", "prediction-side quantities only");
    co->fallthrough();
    std::string co_what = "qk";
    int co_q = 2, co_k = 1, co_g = 3, co_D = 0;
    double co_alpha = 0.1, co_gamma = 0.1;
    co->add_option("what", co_what, "qk, moment, euler, ratio, or density")
        ->check(CLI::IsMember({"qk", "moment", "euler", "ratio", "density"}));
    co->add_option("--q", co_q)->required();
    co->add_option("--k", co_k);
    co->add_option("--g", co_g, "genus");
    co->add_option("--alpha", co_alpha);
    co->add_option("--gamma", co_gamma);
    co->add_option("--trunc-deg", co_D);

    // compare
    auto* cm = app.add_subcommand("compare", "run an acceptance-suite scenario by name");
    cm->fallthrough();
    std::string cm_name;
    bool cm_list = false;
    cm->add_option("name", cm_name, "scenario name or criterion number");
    cm->add_flag("--list", cm_list, "list scenario names");

    // cache
    auto* ca = app.add_subcommand("cache", "manage on-disk caches");
    ca->fallthrough();
    std::string ca_action = "build";
    int ca_q = 2, ca_maxdeg = 8;
    ca->add_option("action", ca_action)->check(CLI::IsMember({"build", "dir"}));
    ca->add_option("--q", ca_q);
    ca->add_option("--maxdeg", ca_maxdeg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!cache_dir_flag.empty()) algebra::set_cache_dir(cache_dir_flag);
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        bool wrote_header = false;

        if (*fam) {
            const auto& fs = FieldSpec::get(validated_q(fam_q));
            family::Set which = family::set_from_name(fam_set);
            if (fam_action == "count") {
                out.stream() << family::count(fs, which, fam_n) << "\n";
            } else {
                if (which == family::Set::B) {
                    for (const Poly& M : family::enumerate_B(fs, fam_n))
                        out.stream() << poly_to_string(fs, M) << "\n";
                } else if (which == family::Set::G) {
                    family::for_each_G(fs, fam_n,
                                       [&](const Poly& F) { out.stream() << poly_to_string(fs, F) << "\n"; });
                } else {
                    family::for_each_discriminant(fs, which, fam_n, [&](const family::Discriminant& u) {
                        out.stream() << family::key(fs, u) << "\n";
                    });
                }
            }
        } else if (*lv) {
            const auto& fs = FieldSpec::get(validated_q(lv_q));
            family::Set which = family::set_from_name(lv_set);
            auto& os = out.stream();
            os << "key,g,coefficients\n";
            family::for_each_discriminant(fs, which, lv_n, [&](const family::Discriminant& u) {
                auto L = lfunction::l_star(fs, u);
                os << family::key(fs, u) << ',' << L.g;
                for (long long cv : L.c) os << ',' << cv;
                os << "\n";
            });
        } else if (*mo) {
            validated_q(mo_p.q);
            std::string kind = mo_set == "I" ? "moment" : (mo_set == "F" ? "moment_F" : "moment_Fprime");
            emit_report(out, experiments::compare(kind, mo_p), format, wrote_header);
        } else if (*ra) {
            validated_q(ra_p.q);
            emit_report(out, experiments::compare("ratio", ra_p), format, wrote_header);
        } else if (*de) {
            validated_q(de_p.q);
            if (de_hist) {
                auto h = experiments::scaled_histogram(de_p.q, de_p.n, de_bins, de_tau);
                auto& os = out.stream();
                os << "bin_center,count,normalized_density\n";
                for (size_t i = 0; i < h.center.size(); ++i)
                    os << h.center[i] << ',' << h.count[i] << ',' << h.density[i] << "\n";
            } else {
                emit_report(out, experiments::compare("density", de_p), format, wrote_header);
            }
        } else if (*co) {
            validated_q(co_q);
            int D = co_D > 0 ? co_D : experiments::default_moment_degree(co_q);
            auto& os = out.stream();
            if (co_what == "qk") {
                auto Q = prediction::q_k(co_k, co_q, D);
                os << "[";
                for (int i = 0; i <= Q.poly.degree(); ++i) os << (i ? "," : "") << Q.poly.coeff(i);
                os << "]\n";
            } else if (co_what == "moment") {
                os << prediction::moment_prediction(co_k, co_q, co_g, D) << "\n";
            } else if (co_what == "euler") {
                auto ep = prediction::euler_P(co_q, D);
                os << "{\"P1\":" << ep.p1.value << ",\"logderiv\":" << ep.logderiv.value
                   << ",\"tail\":" << ep.p1.tail_estimate << ",\"D\":" << D << "}\n";
            } else if (co_what == "ratio") {
                os << prediction::ratio_prediction(co_alpha, co_gamma, co_q, co_g,
                                                   co_D > 0 ? co_D : experiments::kRatiosDegree)
                   << "\n";
            } else {
                auto h = experiments::test_function("fejer3", co_q);
                os << prediction::density_prediction(h, co_q, co_g,
                                                     co_D > 0 ? co_D : experiments::kRatiosDegree)
                   << "\n";
            }
        } else if (*cm) {
            if (cm_list || cm_name.empty()) {
                for (const auto& n : scenarios::names()) out.stream() << n << "\n";
            } else {
                bool numeric = cm_name.find_first_not_of("0123456789") == std::string::npos;
                auto r = numeric ? scenarios::run(std::atoi(cm_name.c_str())) : scenarios::run(cm_name);
                auto& os = out.stream();
                os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.detail.empty()) os << " -- " << r.detail;
                os << "\n";
                for (const auto& rep : r.reports) emit_report(out, rep, format, wrote_header);
                if (!r.pass) return 1;
            }
        } else if (*ca) {
            if (ca_action == "dir") {
                out.stream() << algebra::cache_dir() << "\n";
            } else {
                validated_q(ca_q);
                algebra::warm_irreducibles(FieldSpec::get(ca_q), ca_maxdeg);
                out.stream() << "cached irreducibles for q=" << ca_q << " up to degree " << ca_maxdeg
                             << " in " << (algebra::cache_dir().empty() ? "(memory only)" : algebra::cache_dir())
                             << "\n";
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
