#include "pa/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pa/mathutil.hpp"

namespace pa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSCap = 50.0;

const char* crit_name(Criterion c) {
    switch (c) {
        case Criterion::d1: return "d1";
        case Criterion::d1prime: return "d1prime";
        case Criterion::I: return "I";
        case Criterion::Iprime: return "Iprime";
    }
    return "?";
}

void require_pa_criterion(Criterion c) {
    if (c != Criterion::d1prime && c != Criterion::Iprime)
        throw DomainError("bounds are stated for the d1' and I' criteria");
}

// s-grid used both for the up-optimizer Q_E family and inner optimizations
std::vector<double> default_s_grid() {
    std::vector<double> g;
    g.reserve(64);
    for (int i = 0; i < 64; ++i) {
        double t = static_cast<double>(i) / 63.0;
        g.push_back(1e-3 * std::pow(kSCap / 1e-3, t));  // geometric from 1e-3 to 50
    }
    return g;
}

}  // namespace

std::string bound_csv_header() { return "method,criterion,M,eps,value,s,Rprime"; }

std::string bound_csv_row(const BoundReport& r) {
    std::ostringstream os;
    os << r.method << ',' << r.criterion << ',' << fmt_double(r.m) << ',' << fmt_double(r.eps) << ','
       << fmt_double(r.value) << ',' << fmt_double(r.s_star) << ',' << fmt_double(r.r_prime);
    return os.str();
}

BoundReport bound_simple(const JointSubDistribution& p, std::span<const double> q, double m,
                         double eps, Criterion crit) {
    require_pa_criterion(crit);
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    BoundReport rep;
    rep.method = "simple";
    rep.criterion = crit_name(crit);
    rep.m = m;
    rep.eps = eps;
    if (crit == Criterion::d1prime) {
        double h2 = cond_renyi_rel(p, q, 1.0);
        rep.value = std::sqrt(eps) * std::sqrt(m) * std::exp(-0.5 * h2);
        rep.q_tag = "given";
    } else {
        if (!p.is_normalized()) throw NotNormalized("I' bound needs normalized P");
        double h2d = cond_renyi_down(p, 1.0);
        rep.value = std::log1p(eps * m * std::exp(-h2d));
        rep.q_tag = "P_E";
    }
    return rep;
}

namespace {

double renyi2_log_value(const JointSubDistribution& p, double log_m, double eps, Criterion crit,
                        double s, unsigned iid_n) {
    if (crit == Criterion::d1prime) {
        double order_s = s / (1.0 - s);  // H_up of order 1/(1-s)
        double h = static_cast<double>(iid_n) * cond_renyi_up(p, order_s);
        return std::log(2.0 + std::sqrt(eps)) + s * log_m - s * h;
    }
    double h = static_cast<double>(iid_n) * cond_renyi_down(p, s);
    return s * log_m - s * h;  // log of the eta argument
}

}  // namespace

BoundReport bound_renyi2(const JointSubDistribution& p, double m, double eps, Criterion crit,
                         double s, unsigned iid_n) {
    require_pa_criterion(crit);
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (crit == Criterion::d1prime) {
        if (!(s > 0.0 && s <= 0.5)) throw DomainError("d1' bound needs s in (0, 1/2]");
    } else {
        if (!(s > 0.0 && s <= 1.0)) throw DomainError("I' bound needs s in (0, 1]");
        if (!p.is_normalized()) throw NotNormalized("I' bound needs normalized P");
    }
    const double log_m = std::log(m);
    BoundReport rep;
    rep.method = "renyi2";
    rep.criterion = crit_name(crit);
    rep.m = m;
    rep.eps = eps;
    rep.iid_n = iid_n;
    rep.s_star = s;
    double lv = renyi2_log_value(p, log_m, eps, crit, s, iid_n);
    rep.value = crit == Criterion::d1prime ? std::exp(lv) : eta(std::exp(lv), eps + log_m);
    return rep;
}

BoundReport bound_renyi2_opt(const JointSubDistribution& p, double m, double eps, Criterion crit,
                             unsigned iid_n) {
    require_pa_criterion(crit);
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (crit == Criterion::Iprime && !p.is_normalized())
        throw NotNormalized("I' bound needs normalized P");
    const double log_m = std::log(m);
    const double hi = crit == Criterion::d1prime ? 0.5 : 1.0;
    // minimize the bound itself; for I' the eta wrapper is not monotone in its
    // argument near the vacuous regime
    auto obj = [&](double s) {
        double lv = renyi2_log_value(p, log_m, eps, crit, s, iid_n);
        return crit == Criterion::d1prime ? lv : eta(std::exp(lv), eps + log_m);
    };
    ScalarOpt o = minimize_scalar(obj, 1e-9, hi, 1024, 1e-9);
    BoundReport rep;
    rep.method = "renyi2_opt";
    rep.criterion = crit_name(crit);
    rep.m = m;
    rep.eps = eps;
    rep.iid_n = iid_n;
    rep.s_star = o.x;
    rep.boundary_hit = o.at_upper;
    rep.value = crit == Criterion::d1prime ? std::exp(o.value) : o.value;
    return rep;
}

// ---- tail-form bounds ----

namespace {

struct QCandidate {
    std::string tag;
    std::vector<double> q;
};

std::vector<QCandidate> q_candidates(const JointSubDistribution& p, Criterion crit) {
    std::vector<QCandidate> out;
    out.push_back({"P_E", p.marginal_e_normalized()});
    if (crit != Criterion::d1prime) return out;
    for (double s : default_s_grid()) {
        std::vector<double> q = renyi_up_optimizer(p, s);
        bool dup = false;
        for (const auto& c : out) {
            double d = 0.0;
            for (std::size_t e = 0; e < q.size(); ++e) d = std::max(d, std::abs(q[e] - c.q[e]));
            if (d < 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back({"cor1(s=" + fmt_double(s) + ")", std::move(q)});
    }
    return out;
}

struct TailScan {
    double value = kInf;
    double r_prime = 0.0;
};

// Upper form for d1': min over breakpoints R' = -v_k of
//   2 P{v > v_k} + sqrt(eps) sqrt(M) e^{v_k/2}.
TailScan scan_upper_d(const Spectrum& sp, double log_m, double eps) {
    const auto& atoms = sp.atoms();
    std::vector<double> suf = sp.suffix_weights();
    TailScan best;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        double second = std::exp(0.5 * (std::log(eps) + log_m + atoms[k].value));
        double v = 2.0 * suf[k + 1] + second;
        if (v < best.value) {
            best.value = v;
            best.r_prime = -atoms[k].value;
        }
    }
    return best;
}

// Upper form for I': min over breakpoints of eta(P{v > v_k}, log M) + eps M e^{v_k}.
TailScan scan_upper_i(const Spectrum& sp, double log_m, double eps) {
    const auto& atoms = sp.atoms();
    std::vector<double> suf = sp.suffix_weights();
    TailScan best;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        double v = eta(suf[k + 1], log_m) + eps * std::exp(log_m + atoms[k].value);
        if (v < best.value) {
            best.value = v;
            best.r_prime = -atoms[k].value;
        }
    }
    return best;
}

// c-lower form for d1': min over R' = log c - v_k of
//   2 (1 - 1/c) P{v > v_k} + sqrt(eps) sqrt(M) e^{(v_k - log c)/2}.
TailScan scan_lower_d(const Spectrum& sp, double log_m, double eps, double c) {
    const auto& atoms = sp.atoms();
    std::vector<double> suf = sp.suffix_weights();
    const double logc = std::log(c);
    TailScan best;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        double second = std::exp(0.5 * (std::log(eps) + log_m + atoms[k].value - logc));
        double v = 2.0 * (1.0 - 1.0 / c) * suf[k + 1] + second;
        if (v < best.value) {
            best.value = v;
            best.r_prime = logc - atoms[k].value;
        }
    }
    return best;
}

// c-lower form for I' (the >= event): the infimum over the interval
// [log c - v_k, log c - v_{k-1}) is (1-1/c) eta(P{v >= v_k}, log M) + eps M e^{v_{k-1}-log c}.
TailScan scan_lower_i(const Spectrum& sp, double log_m, double eps, double c) {
    const auto& atoms = sp.atoms();
    std::vector<double> suf = sp.suffix_weights();
    const double logc = std::log(c);
    TailScan best;
    for (std::size_t k = 0; k <= atoms.size(); ++k) {
        double tail_geq = suf[k];  // P{v >= v_k}; k == size gives 0
        double second = k == 0 ? 0.0 : eps * std::exp(log_m + atoms[k - 1].value - logc);
        double v = (1.0 - 1.0 / c) * eta(tail_geq, log_m) + second;
        if (v < best.value) {
            best.value = v;
            best.r_prime = k == 0 ? kInf : logc - atoms[k - 1].value;
        }
    }
    return best;
}

}  // namespace

BoundReport bound_min_tail(const JointSubDistribution& p, double m, double eps, Criterion crit,
                           unsigned iid_n, double c) {
    require_pa_criterion(crit);
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (!(c > 1.0)) throw DomainError("lower-bound parameter c must exceed 1");
    if (crit == Criterion::Iprime && !p.is_normalized())
        throw NotNormalized("I' bound needs normalized P");
    const double log_m = std::log(m);

    BoundReport rep;
    rep.method = "min_tail";
    rep.criterion = crit_name(crit);
    rep.m = m;
    rep.eps = eps;
    rep.iid_n = iid_n;
    rep.c = c;
    rep.value = kInf;
    double lower = kInf;

    for (const QCandidate& qc : q_candidates(p, crit)) {
        Spectrum sp = Spectrum::single_letter(p, qc.q).power(iid_n);
        TailScan up = crit == Criterion::d1prime ? scan_upper_d(sp, log_m, eps)
                                                 : scan_upper_i(sp, log_m, eps);
        TailScan lo = crit == Criterion::d1prime ? scan_lower_d(sp, log_m, eps, c)
                                                 : scan_lower_i(sp, log_m, eps, c);
        if (up.value < rep.value) {
            rep.value = up.value;
            rep.r_prime = up.r_prime;
            rep.q_tag = qc.tag;
        }
        lower = std::min(lower, lo.value);
    }
    rep.lower_bound = lower;
    return rep;
}

namespace {

struct InnerOpt {
    double log_value;
    double s_star;
    bool boundary;
};

// minimize over s >= 0 the exponent (s log M - s H_{1+s} n)/(denom(s)),
// including the s -> infinity limit candidate.
InnerOpt chernoff_inner(const std::function<double(double)>& h_of_s, double h_limit, double log_m,
                        unsigned iid_n, bool denom_1p2s) {
    auto expo = [&](double s) {
        double denom = denom_1p2s ? 1.0 + 2.0 * s : 1.0 + s;
        return (s * log_m - s * static_cast<double>(iid_n) * h_of_s(s)) / denom;
    };
    ScalarOpt o = minimize_scalar(expo, 0.0, kSCap, 1024, 1e-10);
    InnerOpt r{o.value, o.x, false};
    double lim = denom_1p2s ? 0.5 * (log_m - static_cast<double>(iid_n) * h_limit)
                            : log_m - static_cast<double>(iid_n) * h_limit;
    if (lim < r.log_value) {
        r.log_value = lim;
        r.s_star = kInf;
        r.boundary = true;
    } else if (o.at_upper) {
        r.boundary = true;
    }
    return r;
}

}  // namespace

BoundReport bound_min_chernoff(const JointSubDistribution& p, double m, double eps, Criterion crit,
                               unsigned iid_n) {
    require_pa_criterion(crit);
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (crit == Criterion::Iprime && !p.is_normalized())
        throw NotNormalized("I' bound needs normalized P");
    const double log_m = std::log(m);

    BoundReport rep;
    rep.method = "min_chernoff";
    rep.criterion = crit_name(crit);
    rep.m = m;
    rep.eps = eps;
    rep.iid_n = iid_n;

    if (crit == Criterion::d1prime) {
        auto h = [&](double s) { return s == 0.0 ? cond_shannon(p) : cond_renyi_up(p, s); };
        InnerOpt o = chernoff_inner(h, cond_up_limit_min(p), log_m, iid_n, true);
        rep.value = (2.0 + std::sqrt(eps)) * std::exp(o.log_value);
        rep.s_star = o.s_star;
        rep.boundary_hit = o.boundary;
        if (std::isfinite(o.s_star)) {
            double hs = static_cast<double>(iid_n) * h(o.s_star);
            rep.r_prime = (log_m + 2.0 * o.s_star * hs) / (1.0 + 2.0 * o.s_star);
        }
        rep.q_tag = "cor1(s*)";
    } else {
        auto h = [&](double s) { return s == 0.0 ? cond_shannon(p) : cond_renyi_down(p, s); };
        InnerOpt o = chernoff_inner(h, cond_min_down(p), log_m, iid_n, false);
        rep.value = eta(std::exp(o.log_value), eps + log_m);
        rep.s_star = o.s_star;
        rep.boundary_hit = o.boundary;
        if (std::isfinite(o.s_star)) {
            double hs = static_cast<double>(iid_n) * h(o.s_star);
            rep.r_prime = (log_m + o.s_star * hs) / (1.0 + o.s_star);
        }
        rep.q_tag = "P_E";
    }
    return rep;
}

BoundReport bound_equivocation(const JointSubDistribution& p, double m, double eps, unsigned iid_n) {
    if (m < 2.0) throw DomainError("M must be at least 2");
    if (!p.is_normalized()) throw NotNormalized("equivocation bound needs normalized P");
    const double log_m = std::log(m);
    const double n = static_cast<double>(iid_n);
    const double h_min = n * cond_min_down(p);

    auto h_down = [&](double s) {
        return s == 0.0 ? n * cond_shannon(p) : n * cond_renyi_down(p, s);
    };

    // Legendre table of the concave map s -> s H_down_{1+s}; the inner
    // minimum over s is a pointwise minimum of lines in R', so a fixed grid
    // scan is cheap and errs only upward (still a valid bound)
    const int kGrid = 2048;
    std::vector<double> sg(kGrid), gv(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        sg[i] = kSCap * static_cast<double>(i) / (kGrid - 1);
        gv[i] = sg[i] * h_down(sg[i]);
    }
    auto inner_grid = [&](double rp) {
        if (rp < h_min - 1e-12) return -kInf;  // the exponent is unbounded below
        double best = 0.0;  // s = 0
        for (int i = 1; i < kGrid; ++i) best = std::min(best, sg[i] * rp - gv[i]);
        return best;
    };
    auto inner_exact = [&](double rp) -> ScalarOpt {
        auto expo = [&](double s) { return s * (rp - h_down(s)); };
        ScalarOpt o = minimize_scalar(expo, 0.0, kSCap, 256, 1e-9);
        if (rp < h_min - 1e-12) {
            o.value = -kInf;
            o.x = kInf;
        }
        return o;
    };
    auto tail_term = [&](double rp) {
        double log_tail = std::log(eps) + log_m - rp;
        return log_tail > 30.0 ? log_tail : std::log1p(std::exp(log_tail));
    };

    const double rp_hi = log_m + 10.0;
    std::vector<double> cands;
    cands.reserve(kGrid + kGrid);
    for (int i = 0; i < kGrid; ++i) cands.push_back(rp_hi * static_cast<double>(i) / (kGrid - 1));
    // closed-form balance points of the Chernoff split, one per grid s
    for (int i = 0; i < kGrid; ++i) cands.push_back((log_m + gv[i]) / (1.0 + sg[i]));
    double best = kInf, best_rp = 0.0;
    for (double rp : cands) {
        if (rp < 0.0 || rp > rp_hi) continue;
        double v = eta(std::exp(inner_grid(rp)), log_m) + tail_term(rp);
        if (v < best) {
            best = v;
            best_rp = rp;
        }
    }
    double w = rp_hi / (kGrid - 1);
    ScalarOpt fine = minimize_scalar(
        [&](double rp) { return eta(std::exp(inner_grid(rp)), log_m) + tail_term(rp); },
        std::max(0.0, best_rp - w), std::min(rp_hi, best_rp + w), 64, 1e-10);
    if (fine.value < best) best_rp = fine.x;

    // final value with the exact inner optimization at the chosen threshold
    ScalarOpt in = inner_exact(best_rp);
    BoundReport rep;
    rep.method = "equivocation";
    rep.criterion = "Iprime";
    rep.m = m;
    rep.eps = eps;
    rep.iid_n = iid_n;
    rep.value = eta(std::exp(in.value), log_m) + tail_term(best_rp);
    rep.r_prime = best_rp;
    rep.s_star = in.x;
    rep.q_tag = "P_E";
    return rep;
}

double exact_leakage(const JointSubDistribution& p, const HashFamily& fam, Criterion crit) {
    require_pa_criterion(crit);
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < fam.n; ++i) qn *= fam.spec->q();
    if (p.size_a() != qn) throw ShapeError("distribution alphabet does not match the family domain");
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < fam.m; ++i) qm *= fam.spec->q();
    if (crit == Criterion::Iprime && !p.is_normalized())
        throw NotNormalized("I' leakage needs normalized P");

    std::vector<double> terms;
    terms.reserve(fam.members.size());
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        std::vector<int> f = fam.members[i].map_table();
        JointSubDistribution out = p.pushforward(f, qm);
        terms.push_back(fam.probs[i] * criterion_value(out, crit));
    }
    return pairwise_sum(terms);
}

}  // namespace pa
