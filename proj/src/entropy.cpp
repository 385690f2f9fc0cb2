#include "pa/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pa/mathutil.hpp"

namespace pa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_normalized_vec(std::span<const double> q) {
    std::vector<double> tmp(q.begin(), q.end());
    if (std::abs(pairwise_sum(tmp) - 1.0) > 1e-9) throw NotNormalized("Q_E must be normalized");
}

}  // namespace

double renyi_divergence(std::span<const double> p, std::span<const double> q, double s) {
    if (p.size() != q.size()) throw ShapeError("distribution sizes differ");
    if (s == 0.0) {
        std::vector<double> terms;
        terms.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return kInf;
            terms.push_back(p[i] * (std::log(p[i]) - std::log(q[i])));
        }
        return pairwise_sum(terms);
    }
    std::vector<double> logs;
    logs.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            if (s > 0.0) return kInf;
            continue;  // Q^{-s} = Q^{|s|} = 0
        }
        logs.push_back((1.0 + s) * std::log(p[i]) - s * std::log(q[i]));
    }
    return log_sum_exp(logs) / s;
}

double cond_renyi_rel(const JointSubDistribution& p, std::span<const double> q, double s) {
    if (q.size() != p.size_e()) throw ShapeError("Q_E size mismatch");
    require_normalized_vec(q);
    if (s == 0.0) {
        std::vector<double> terms;
        for (std::size_t a = 0; a < p.size_a(); ++a)
            for (std::size_t e = 0; e < p.size_e(); ++e) {
                double m = p.at(a, e);
                if (m <= 0.0) continue;
                if (q[e] <= 0.0) return -kInf;
                terms.push_back(m * (std::log(m) - std::log(q[e])));
            }
        return -pairwise_sum(terms);
    }
    std::vector<double> logs;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double m = p.at(a, e);
            if (m <= 0.0) continue;
            if (q[e] <= 0.0) {
                if (s > 0.0) return -kInf;
                continue;
            }
            logs.push_back((1.0 + s) * std::log(m) - s * std::log(q[e]));
        }
    return -log_sum_exp(logs) / s;
}

double cond_min_rel(const JointSubDistribution& p, std::span<const double> q) {
    if (q.size() != p.size_e()) throw ShapeError("Q_E size mismatch");
    require_normalized_vec(q);
    double best = 0.0;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            if (q[e] <= 0.0) continue;
            best = std::max(best, p.at(a, e) / q[e]);
        }
    return best > 0.0 ? -std::log(best) : kInf;
}

double cond_renyi_down(const JointSubDistribution& p, double s) {
    return cond_renyi_rel(p, p.marginal_e_normalized(), s);
}

double cond_min_down(const JointSubDistribution& p) {
    return cond_min_rel(p, p.marginal_e_normalized());
}

double cond_renyi_up(const JointSubDistribution& p, double s) {
    if (s <= -1.0) throw DomainError("up variant needs s > -1");
    if (s == 0.0) return cond_shannon(p);
    std::vector<double> col_logs;
    col_logs.reserve(p.size_e());
    std::vector<double> cell(p.size_a());
    for (std::size_t e = 0; e < p.size_e(); ++e) {
        std::vector<double> logs;
        logs.reserve(p.size_a());
        for (std::size_t a = 0; a < p.size_a(); ++a) {
            double m = p.at(a, e);
            if (m > 0.0) logs.push_back((1.0 + s) * std::log(m));
        }
        if (logs.empty()) continue;
        col_logs.push_back(log_sum_exp(logs) / (1.0 + s));
    }
    return -(1.0 + s) / s * log_sum_exp(col_logs);
}

std::vector<double> renyi_up_optimizer(const JointSubDistribution& p, double s) {
    if (s <= -1.0) throw DomainError("up variant needs s > -1");
    std::vector<double> col(p.size_e(), 0.0);
    for (std::size_t e = 0; e < p.size_e(); ++e) {
        std::vector<double> logs;
        for (std::size_t a = 0; a < p.size_a(); ++a) {
            double m = p.at(a, e);
            if (m > 0.0) logs.push_back((1.0 + s) * std::log(m));
        }
        col[e] = logs.empty() ? 0.0 : std::exp(log_sum_exp(logs) / (1.0 + s));
    }
    double z = pairwise_sum(col);
    if (z <= 0.0) throw DomainError("zero-mass distribution");
    for (double& v : col) v /= z;
    return col;
}

double cond_shannon(const JointSubDistribution& p) {
    std::vector<double> pe = p.marginal_e_normalized();
    std::vector<double> terms;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double m = p.at(a, e);
            if (m <= 0.0) continue;
            terms.push_back(m * (std::log(m) - std::log(pe[e])));
        }
    return -pairwise_sum(terms);
}

double cond_up_limit_min(const JointSubDistribution& p) {
    std::vector<double> col(p.size_e(), 0.0);
    for (std::size_t e = 0; e < p.size_e(); ++e)
        for (std::size_t a = 0; a < p.size_a(); ++a) col[e] = std::max(col[e], p.at(a, e));
    double z = pairwise_sum(col);
    return z > 0.0 ? -std::log(z) : kInf;
}

double gallager_phi(const JointSubDistribution& p, double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("phi needs 0 < s < 1");
    std::vector<double> col_logs;
    for (std::size_t e = 0; e < p.size_e(); ++e) {
        std::vector<double> logs;
        for (std::size_t a = 0; a < p.size_a(); ++a) {
            double m = p.at(a, e);
            if (m > 0.0) logs.push_back(std::log(m) / (1.0 - s));
        }
        if (logs.empty()) continue;
        col_logs.push_back((1.0 - s) * log_sum_exp(logs));
    }
    return log_sum_exp(col_logs);
}

double cond_renyi(const JointSubDistribution& p, const RenyiOrder& order, std::span<const double> q) {
    switch (order.variant) {
        case RenyiOrder::Variant::down:
            if (order.min_order) return cond_min_down(p);
            if (order.s == 0.0) return cond_shannon(p);
            return cond_renyi_down(p, order.s);
        case RenyiOrder::Variant::up:
            if (order.min_order) return cond_up_limit_min(p);
            return cond_renyi_up(p, order.s);
        case RenyiOrder::Variant::relative:
            if (order.min_order) return cond_min_rel(p, q);
            return cond_renyi_rel(p, q, order.s);
    }
    throw DomainError("unknown order variant");
}

// ---- criteria ----

namespace {

double l1_to_product(const JointSubDistribution& p, std::span<const double> pa,
                     std::span<const double> pe) {
    std::vector<double> terms;
    terms.reserve(p.size_a() * p.size_e());
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e)
            terms.push_back(std::abs(p.at(a, e) - pa[a] * pe[e]));
    return pairwise_sum(terms);
}

double kl_to_product(const JointSubDistribution& p, std::span<const double> pa,
                     std::span<const double> pe) {
    std::vector<double> terms;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double m = p.at(a, e);
            if (m <= 0.0) continue;
            double r = pa[a] * pe[e];
            if (r <= 0.0) return kInf;
            terms.push_back(m * (std::log(m) - std::log(r)));
        }
    return pairwise_sum(terms);
}

}  // namespace

double criterion_value(const JointSubDistribution& p, Criterion c) {
    switch (c) {
        case Criterion::d1:
            return l1_to_product(p, p.marginal_a(), p.marginal_e());
        case Criterion::d1prime:
            return l1_to_product(p, JointSubDistribution::uniform_mix(p.size_a()), p.marginal_e());
        case Criterion::I:
            if (!p.is_normalized()) throw NotNormalized("I requires a normalized distribution");
            return kl_to_product(p, p.marginal_a(), p.marginal_e());
        case Criterion::Iprime:
            if (!p.is_normalized()) throw NotNormalized("I' requires a normalized distribution");
            return kl_to_product(p, JointSubDistribution::uniform_mix(p.size_a()), p.marginal_e());
    }
    throw DomainError("unknown criterion");
}

double d2_distance(const JointSubDistribution& p, std::span<const double> q) {
    if (q.size() != p.size_e()) throw ShapeError("Q_E size mismatch");
    require_normalized_vec(q);
    std::vector<double> pe = p.marginal_e();
    const double mix = 1.0 / static_cast<double>(p.size_a());
    std::vector<double> terms;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double d = p.at(a, e) - mix * pe[e];
            if (q[e] <= 0.0) {
                if (d != 0.0) return kInf;
                continue;
            }
            terms.push_back(d * d / q[e]);
        }
    return pairwise_sum(terms);
}

// ---- smoothing ----

SmoothingMin smoothing_distance_min(const JointSubDistribution& p, std::span<const double> q, double r) {
    if (q.size() != p.size_e()) throw ShapeError("Q_E size mismatch");
    require_normalized_vec(q);
    const double scale = std::exp(-r);
    std::vector<double> capped(p.size_a() * p.size_e());
    std::vector<double> removed;
    removed.reserve(capped.size());
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double cap = scale * q[e];
            double m = p.at(a, e);
            double kept = std::min(m, cap);
            capped[a * p.size_e() + e] = kept;
            removed.push_back(m - kept);
        }
    return {pairwise_sum(removed), JointSubDistribution(p.size_a(), p.size_e(), std::move(capped))};
}

SmoothingResult smooth_min_entropy(const JointSubDistribution& p, std::span<const double> q, double eps1) {
    if (eps1 < 0.0) throw DomainError("epsilon1 must be nonnegative");
    SmoothingResult out;
    const double mass = p.total_mass();
    if (eps1 >= mass - 1e-12) {
        out.infinite = true;
        out.epsilon1 = mass;
        out.r = kInf;
        out.smoothed = JointSubDistribution(p.size_a(), p.size_e(),
                                            std::vector<double>(p.size_a() * p.size_e(), 0.0));
        return out;
    }
    double lo = cond_min_rel(p, q);
    if (eps1 == 0.0) {
        out.epsilon1 = 0.0;
        out.r = lo;
        out.smoothed = p;
        return out;
    }
    double hi = lo + 1.0;
    while (smoothing_distance_min(p, q, hi).distance <= eps1) hi += std::max(1.0, hi - lo);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        if (smoothing_distance_min(p, q, mid).distance <= eps1)
            lo = mid;
        else
            hi = mid;
    }
    SmoothingMin sm = smoothing_distance_min(p, q, lo);
    out.epsilon1 = sm.distance;
    out.r = lo;
    out.smoothed = std::move(sm.optimizer);
    return out;
}

SmoothH2 smooth_h2_info_spectrum(const JointSubDistribution& p, double m) {
    if (!(m > 0.0)) throw DomainError("M must be positive");
    if (!p.is_normalized()) throw NotNormalized("info-spectrum smoothing assumes normalized P");
    std::vector<double> cond = p.conditional_table();
    std::vector<double> pe = p.marginal_e();
    std::vector<double> cost, keep;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double mass = p.at(a, e);
            if (mass <= 0.0) continue;
            if (cond[a * p.size_e() + e] > 1.0 / m)
                cost.push_back(mass);
            else
                keep.push_back(mass * mass / pe[e]);
        }
    double eps1 = pairwise_sum(cost);
    double coll = pairwise_sum(keep);
    return {eps1, coll > 0.0 ? -std::log(coll) : kInf};
}

SmoothH2Bounds smooth_h2_bounds(const JointSubDistribution& p, double eps1) {
    if (!p.is_normalized()) throw NotNormalized("smoothed collision entropy assumes normalized P");
    if (eps1 < 0.0) throw DomainError("epsilon1 must be nonnegative");
    std::vector<double> cond = p.conditional_table();
    std::vector<double> vals;
    for (double c : cond)
        if (c > 0.0) vals.push_back(c);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    SmoothH2Bounds out{};
    out.lower = cond_renyi_down(p, 1.0);
    out.achieved_eps1 = 0.0;
    // candidate truncations zero every cell with conditional above a threshold;
    // smaller thresholds zero more and raise the survivor's collision entropy
    for (double thr : vals) {
        // zero cells with cond > thr; the slack keeps cond == thr cells alive
        SmoothH2 t = smooth_h2_info_spectrum(p, 1.0 / (thr * (1.0 + 1e-12)));
        if (t.epsilon1 <= eps1 + 1e-15 && t.h2 > out.lower) {
            out.lower = t.h2;
            out.achieved_eps1 = t.epsilon1;
        }
    }
    double rem = p.total_mass() - eps1;
    out.upper = rem > 0.0 ? std::log(static_cast<double>(p.size_a())) - 2.0 * std::log(rem) : kInf;
    return out;
}

double variance_v(const JointSubDistribution& p) {
    if (!p.is_normalized()) throw NotNormalized("V(P) assumes normalized P");
    double h = cond_shannon(p);
    std::vector<double> cond = p.conditional_table();
    std::vector<double> terms;
    for (std::size_t i = 0; i < cond.size(); ++i) {
        double m = p.data()[i];
        if (m <= 0.0) continue;
        double dev = std::log(cond[i]) + h;  // centered conditional information
        terms.push_back(m * dev * dev);
    }
    return pairwise_sum(terms);
}

// ---- analytic derivatives of s H_up ----

namespace {

struct TiltedStats {
    double mean_g;        // E over the tilted joint of the score g
    double var_between;   // variance of the per-column score mean
    double mean_within;   // tilted mean of the within-column variance of log w
    double log_z;
};

TiltedStats tilted_stats(const JointSubDistribution& p, double s) {
    if (!p.is_normalized()) throw NotNormalized("derivative formulas assume normalized P");
    if (s <= -1.0) throw DomainError("needs s > -1");
    std::vector<double> pe = p.marginal_e();
    std::vector<double> cond = p.conditional_table();
    const std::size_t ne = p.size_e();

    std::vector<double> col_logS(ne, -kInf);
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> logs;
        for (std::size_t a = 0; a < p.size_a(); ++a) {
            double w = cond[a * ne + e];
            if (w > 0.0) logs.push_back((1.0 + s) * std::log(w));
        }
        if (!logs.empty()) col_logS[e] = log_sum_exp(logs);
    }
    std::vector<double> colw_logs;
    for (std::size_t e = 0; e < ne; ++e)
        if (pe[e] > 0.0 && std::isfinite(col_logS[e]))
            colw_logs.push_back(std::log(pe[e]) + col_logS[e] / (1.0 + s));
    double log_z = log_sum_exp(colw_logs);

    double m1 = 0.0, between2 = 0.0, within = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
        if (pe[e] <= 0.0 || !std::isfinite(col_logS[e])) continue;
        double col_weight = std::exp(std::log(pe[e]) + col_logS[e] / (1.0 + s) - log_z);
        double ca = 0.0, ca2 = 0.0;  // tilted conditional moments of log w
        for (std::size_t a = 0; a < p.size_a(); ++a) {
            double w = cond[a * ne + e];
            if (w <= 0.0) continue;
            double pc = std::exp((1.0 + s) * std::log(w) - col_logS[e]);
            ca += pc * std::log(w);
            ca2 += pc * std::log(w) * std::log(w);
        }
        double g_col = ca / (1.0 + s) - col_logS[e] / ((1.0 + s) * (1.0 + s));
        m1 += col_weight * g_col;
        between2 += col_weight * g_col * g_col;
        within += col_weight * std::max(0.0, ca2 - ca * ca);
    }
    return {m1, std::max(0.0, between2 - m1 * m1), within, log_z};
}

}  // namespace

double d_s_h_up(const JointSubDistribution& p, double s) {
    TiltedStats t = tilted_stats(p, s);
    return -((1.0 + s) * t.mean_g + t.log_z);
}

double d2_s_h_up(const JointSubDistribution& p, double s) {
    // second derivative of s H_up: a between-column variance plus the tilted
    // within-column variance of the conditional log-likelihood, negated
    TiltedStats t = tilted_stats(p, s);
    return -((1.0 + s) * t.var_between + t.mean_within);
}

}  // namespace pa
