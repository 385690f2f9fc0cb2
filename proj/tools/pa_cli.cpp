// Batch front-end for the privacy-amplification analysis library: evaluate
// leakage bounds, exponent curves, second-order and equivocation limits,
// audit hash families, and run the verification suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pa/asymptotic.hpp"
#include "pa/bounds.hpp"
#include "pa/entropy.hpp"
#include "pa/hash.hpp"
#include "pa/io.hpp"
#include "pa/verify.hpp"

using nlohmann::json;

namespace {

struct BitsFlag {
    bool bits = false;
    double scale() const { return bits ? 1.0 / std::log(2.0) : 1.0; }
};

pa::Criterion parse_criterion(const std::string& s) {
    if (s == "d1prime") return pa::Criterion::d1prime;
    if (s == "Iprime") return pa::Criterion::Iprime;
    throw pa::DomainError("criterion must be d1prime or Iprime");
}

std::vector<double> parse_grid(const std::string& spec) {
    // a:b:steps
    double a = 0, b = 0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw pa::DomainError("--r-grid expects a:b:steps");
    std::vector<double> g;
    for (int i = 0; i < steps; ++i)
        g.push_back(steps == 1 ? a : a + (b - a) * static_cast<double>(i) / (steps - 1));
    return g;
}

std::vector<unsigned> parse_n_list(const std::string& spec) {
    std::vector<unsigned> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(static_cast<unsigned>(std::stoul(tok)));
    if (out.empty()) throw pa::DomainError("--n-list expects a comma-separated list");
    return out;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"privacy amplification bound calculator"};
    app.require_subcommand(1);
    BitsFlag bits;
    app.add_flag("--bits", bits.bits, "report entropic quantities in bits (presentation only)");

    // ---- bounds ----
    auto* cb = app.add_subcommand("bounds", "evaluate a leakage bound for one distribution");
    std::string dist_path, criterion = "Iprime", method = "simple", out_path;
    double m_out = 2.0, eps = 1.0, s_fixed = -1.0, c_lower = 2.0;
    unsigned iid_n = 1;
    cb->add_option("--dist", dist_path, "distribution JSON file")->required();
    cb->add_option("--M", m_out, "output size M")->required();
    cb->add_option("--eps", eps, "family parameter epsilon");
    cb->add_option("--criterion", criterion, "d1prime | Iprime");
    cb->add_option("--method", method, "simple | renyi2 | min-tail | min-chernoff | equivocation");
    cb->add_option("--s", s_fixed, "fixed s for renyi2 (optimized when omitted)");
    cb->add_option("--iid", iid_n, "evaluate for the n-fold i.i.d. source");
    cb->add_option("--c", c_lower, "lower-bound parameter c > 1 for min-tail");
    cb->add_option("--out", out_path, "write the report JSON here instead of stdout");

    // ---- exponents ----
    auto* ce = app.add_subcommand("exponents", "sample exponent curves over a rate grid");
    std::string exp_dist, r_grid_spec = "0.05:0.5:10", which = "all";
    ce->add_option("--dist", exp_dist, "distribution JSON file")->required();
    ce->add_option("--r-grid", r_grid_spec, "rate grid a:b:steps");
    ce->add_option("--which", which,
                   "all | e_d | e_I | e_d_tilde | e_I_tilde | e_d_bar | e_d_quantum_ref | "
                   "e_I_quantum_ref");

    // ---- second-order ----
    auto* cs = app.add_subcommand("second-order", "finite-n tail against the Gaussian limit");
    std::string so_dist, n_list_spec = "25,100,400";
    double so_r = 0.0, pn_degree = 1.0;
    cs->add_option("--dist", so_dist, "distribution JSON file")->required();
    cs->add_option("--R", so_r, "second-order rate (nats per sqrt(n))")->required();
    cs->add_option("--n-list", n_list_spec, "comma-separated block lengths");
    cs->add_option("--pn-degree", pn_degree,
                   "degree of the dual-universality polynomial P(n) = n^degree");

    // ---- equivocation ----
    auto* cq = app.add_subcommand("equivocation", "per-symbol leakage above the entropy rate");
    std::string eq_dist;
    double eq_r = 0.0, eq_eps = 1.0;
    unsigned eq_n = 50;
    cq->add_option("--dist", eq_dist, "distribution JSON file")->required();
    cq->add_option("--R", eq_r, "key rate in nats per symbol")->required();
    cq->add_option("--n", eq_n, "block length");
    cq->add_option("--eps", eq_eps, "family parameter epsilon");

    // ---- family-audit ----
    auto* cf = app.add_subcommand("family-audit", "enumerate a hash family and report parameters");
    std::string kind = "modified-toeplitz", seed_dist_spec;
    unsigned fq = 2, fn = 2, fm = 1;
    cf->add_option("--kind", kind, "full-random | toeplitz | modified-toeplitz");
    cf->add_option("--q", fq, "field size (prime power <= 256)");
    cf->add_option("--n", fn, "input length");
    cf->add_option("--m", fm, "output length");
    cf->add_option("--seed-dist", seed_dist_spec, "comma-separated seed symbol distribution");
    cf->add_option("--out", out_path, "write the audit JSON here instead of stdout");

    // ---- verify ----
    auto* cv = app.add_subcommand("verify", "run the cross-check suite");
    std::string corpus = "builtin", report_path;
    std::uint64_t seed = 0;
    int vcount = 100;
    bool with_fault = false;
    cv->add_option("--corpus", corpus, "builtin | random");
    auto* seed_opt = cv->add_option("--seed", seed, "corpus seed (required for random)");
    cv->add_option("--count", vcount, "corpus size for random");
    cv->add_option("--json", report_path, "write the full report JSON here");
    cv->add_flag("--self-test-fault", with_fault, "corrupt one bound to confirm detection");

    CLI11_PARSE(app, argc, argv);

    if (cb->parsed()) {
        pa::DistributionFile df = pa::load_distribution(dist_path);
        pa::Criterion crit = parse_criterion(criterion);
        pa::BoundReport rep;
        if (method == "simple") {
            if (iid_n != 1) throw pa::DomainError("--iid is not available for method simple");
            rep = pa::bound_simple(df.dist, df.dist.marginal_e_normalized(), m_out, eps, crit);
        } else if (method == "renyi2") {
            rep = s_fixed > 0.0 ? pa::bound_renyi2(df.dist, m_out, eps, crit, s_fixed, iid_n)
                                : pa::bound_renyi2_opt(df.dist, m_out, eps, crit, iid_n);
        } else if (method == "min-tail") {
            rep = pa::bound_min_tail(df.dist, m_out, eps, crit, iid_n, c_lower);
        } else if (method == "min-chernoff") {
            rep = pa::bound_min_chernoff(df.dist, m_out, eps, crit, iid_n);
        } else if (method == "equivocation") {
            if (crit != pa::Criterion::Iprime)
                throw pa::DomainError("the equivocation bound is an I' bound");
            rep = pa::bound_equivocation(df.dist, m_out, eps, iid_n);
        } else {
            throw pa::DomainError("unknown method '" + method + "'");
        }
        json j = pa::bound_report_to_json(rep);
        if (bits.bits && crit == pa::Criterion::Iprime) {
            j["value_bits"] = rep.value * bits.scale();
        }
        emit(j, out_path);
        return 0;
    }

    if (ce->parsed()) {
        pa::DistributionFile df = pa::load_distribution(exp_dist);
        std::vector<double> grid = parse_grid(r_grid_spec);
        std::vector<pa::ExponentKind> kinds;
        using EK = pa::ExponentKind;
        if (which == "all")
            kinds = {EK::e_d, EK::e_I, EK::e_d_tilde, EK::e_I_tilde, EK::e_d_bar,
                     EK::e_d_quantum_ref, EK::e_I_quantum_ref};
        else {
            bool found = false;
            for (EK k : {EK::e_d, EK::e_I, EK::e_d_tilde, EK::e_I_tilde, EK::e_d_bar,
                         EK::e_d_quantum_ref, EK::e_I_quantum_ref})
                if (pa::to_string(k) == which) {
                    kinds = {k};
                    found = true;
                }
            if (!found) throw pa::DomainError("unknown exponent '" + which + "'");
        }
        std::cout << "which," << pa::curve_csv_header() << "\n";
        for (EK k : kinds)
            for (const pa::CurveSample& smp : pa::exponent_curve(df.dist, grid, k)) {
                pa::CurveSample scaled = smp;
                scaled.value *= bits.scale();
                std::cout << pa::to_string(k) << ',' << pa::curve_csv_row(scaled) << "\n";
            }
        return 0;
    }

    if (cs->parsed()) {
        pa::DistributionFile df = pa::load_distribution(so_dist);
        if (!df.dist.is_normalized()) throw pa::DomainError("second-order needs a normalized P");
        double h = pa::cond_shannon(df.dist);
        double limit = pa::second_order(df.dist, so_r);
        std::vector<double> pe = df.dist.marginal_e_normalized();
        std::cout << "n,tail_term,full_bound,limit,gap_tail\n";
        for (unsigned n : parse_n_list(n_list_spec)) {
            double rp = n * h + std::sqrt(static_cast<double>(n)) * so_r +
                        std::pow(static_cast<double>(n), 0.25);
            pa::Spectrum sp = pa::spectrum_power(df.dist, pe, n);
            double tail2 = 2.0 * sp.tail(rp, true);
            double slack = std::sqrt(std::pow(static_cast<double>(n), pn_degree)) *
                           std::exp(-0.5 * std::pow(static_cast<double>(n), 0.25));
            std::cout << n << ',' << pa::fmt_double(tail2) << ',' << pa::fmt_double(tail2 + slack)
                      << ',' << pa::fmt_double(limit) << ',' << pa::fmt_double(tail2 - limit)
                      << "\n";
        }
        return 0;
    }

    if (cq->parsed()) {
        pa::DistributionFile df = pa::load_distribution(eq_dist);
        double h = pa::cond_shannon(df.dist);
        double m = std::ceil(std::exp(static_cast<double>(eq_n) * eq_r));
        pa::BoundReport rep = pa::bound_equivocation(df.dist, m, eq_eps, eq_n);
        json j;
        j["n"] = eq_n;
        j["R"] = eq_r;
        j["eps"] = eq_eps;
        j["H_cond"] = h * bits.scale();
        j["bound_per_n"] = rep.value / eq_n * bits.scale();
        j["limit"] = pa::equivocation_rate(df.dist, eq_r) * bits.scale();
        j["gap"] = (rep.value / eq_n - pa::equivocation_rate(df.dist, eq_r)) * bits.scale();
        j["Rprime"] = rep.r_prime;
        emit(j, "");
        return 0;
    }

    if (cf->parsed()) {
        pa::FamilyKind fk;
        if (kind == "full-random")
            fk = pa::FamilyKind::full_random;
        else if (kind == "toeplitz")
            fk = pa::FamilyKind::toeplitz;
        else if (kind == "modified-toeplitz")
            fk = pa::FamilyKind::modified_toeplitz;
        else
            throw pa::DomainError("unknown family kind '" + kind + "'");
        unsigned p = 0, k = 0;
        for (unsigned pp : {2u, 3u, 5u, 7u, 11u, 13u})
            for (unsigned kk = 1; kk <= 8; ++kk) {
                double qq = std::pow(static_cast<double>(pp), static_cast<double>(kk));
                if (qq == static_cast<double>(fq)) {
                    p = pp;
                    k = kk;
                }
            }
        if (p == 0) throw pa::DomainError("q is not a supported prime power");
        const pa::FieldSpec& spec = pa::FieldSpec::get(p, k);
        std::vector<double> seed_dist;
        if (!seed_dist_spec.empty()) {
            std::istringstream is(seed_dist_spec);
            std::string tok;
            while (std::getline(is, tok, ',')) seed_dist.push_back(std::stod(tok));
        }
        pa::HashFamily fam = pa::make_family(fk, spec, fn, fm, seed_dist);
        emit(pa::family_audit_to_json(pa::audit_family(fam)), out_path);
        return 0;
    }

    if (cv->parsed()) {
        if (corpus == "random" && !*seed_opt) throw pa::DomainError("--seed is required for random");
        pa::verify::SuiteOptions opt;
        opt.corpus = corpus;
        opt.seed = seed;
        opt.count = vcount;
        opt.inject_fault = with_fault;
        pa::verify::SuiteReport rep = pa::verify::run_suite(opt);
        if (!report_path.empty()) {
            std::ofstream f(report_path);
            f << rep.to_json().dump(2) << "\n";
        }
        std::cout << "verify: " << rep.passed << " passed, " << rep.failed << " failed\n";
        for (const auto& c : rep.cases)
            if (!c.passed) std::cout << "FAIL " << c.id << (c.detail.empty() ? "" : " " + c.detail)
                                     << "\n";
        return rep.failed == 0 ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
