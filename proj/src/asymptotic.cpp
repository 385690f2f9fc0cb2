#include "pa/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pa/entropy.hpp"
#include "pa/mathutil.hpp"

namespace pa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSCap = 50.0;

double h_up_order(const JointSubDistribution& p, double s) {
    return s == 0.0 ? cond_shannon(p) : cond_renyi_up(p, s);
}
double h_down_order(const JointSubDistribution& p, double s) {
    return s == 0.0 ? cond_shannon(p) : cond_renyi_down(p, s);
}

ExponentResult clamp(ExponentResult r) {
    if (r.value < 0.0) {
        r.value = 0.0;
        r.optimizer = 0.0;
        r.boundary = false;
    }
    return r;
}

}  // namespace

std::string to_string(ExponentKind k) {
    switch (k) {
        case ExponentKind::e_d: return "e_d";
        case ExponentKind::e_I: return "e_I";
        case ExponentKind::e_d_tilde: return "e_d_tilde";
        case ExponentKind::e_I_tilde: return "e_I_tilde";
        case ExponentKind::e_d_bar: return "e_d_bar";
        case ExponentKind::e_d_quantum_ref: return "e_d_quantum_ref";
        case ExponentKind::e_I_quantum_ref: return "e_I_quantum_ref";
    }
    return "?";
}

ExponentResult exponent(const JointSubDistribution& p, double r, ExponentKind kind) {
    if (!p.is_normalized()) throw NotNormalized("exponents assume normalized P");
    switch (kind) {
        case ExponentKind::e_d: {
            auto f = [&](double t) { return t >= 1.0 ? -kInf : t * (h_up_order(p, t / (1.0 - t)) - r); };
            ScalarOpt o = maximize_scalar(f, 0.0, 0.5, 512, 1e-10);
            return clamp({o.value, o.x, false});
        }
        case ExponentKind::e_I: {
            auto f = [&](double s) { return s * (h_down_order(p, s) - r); };
            ScalarOpt o = maximize_scalar(f, 0.0, 1.0, 512, 1e-10);
            return clamp({o.value, o.x, false});
        }
        case ExponentKind::e_d_tilde: {
            auto f = [&](double s) { return s * (h_up_order(p, s) - r) / (1.0 + 2.0 * s); };
            ScalarOpt o = maximize_scalar(f, 0.0, kSCap, 1024, 1e-10);
            double lim = 0.5 * (cond_up_limit_min(p) - r);  // s -> infinity
            if (lim > o.value) return clamp({lim, kInf, true});
            return clamp({o.value, o.x, o.at_upper});
        }
        case ExponentKind::e_I_tilde: {
            auto f = [&](double s) { return s * (h_down_order(p, s) - r) / (1.0 + s); };
            ScalarOpt o = maximize_scalar(f, 0.0, kSCap, 1024, 1e-10);
            double lim = cond_min_down(p) - r;
            if (lim > o.value) return clamp({lim, kInf, true});
            return clamp({o.value, o.x, o.at_upper});
        }
        case ExponentKind::e_d_bar: {
            auto f = [&](double t) { return t >= 1.0 ? -kInf : t * (h_up_order(p, t / (1.0 - t)) - r); };
            ScalarOpt o = maximize_scalar(f, 0.0, 1.0 - 1e-9, 1024, 1e-10);
            double lim = cond_up_limit_min(p) - r;  // t -> 1
            if (lim > o.value) return clamp({lim, kInf, true});
            return clamp({o.value, o.x, o.at_upper});
        }
        case ExponentKind::e_d_quantum_ref: {
            auto f = [&](double t) {
                return t >= 1.0 ? -kInf
                                : t / (2.0 * (1.0 - t)) * (h_up_order(p, t / (1.0 - t)) - r);
            };
            ScalarOpt o = maximize_scalar(f, 0.0, 0.5, 512, 1e-10);
            return clamp({o.value, o.x, false});
        }
        case ExponentKind::e_I_quantum_ref: {
            auto f = [&](double s) { return s / (2.0 - s) * (h_down_order(p, s) - r); };
            ScalarOpt o = maximize_scalar(f, 0.0, 1.0, 512, 1e-10);
            return clamp({o.value, o.x, false});
        }
    }
    throw DomainError("unknown exponent kind");
}

std::vector<CurveSample> exponent_curve(const JointSubDistribution& p, std::span<const double> r_grid,
                                        ExponentKind kind) {
    std::vector<CurveSample> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        ExponentResult e = exponent(p, r, kind);
        out.push_back({r, e.value, e.optimizer, e.boundary});
    }
    return out;
}

std::string curve_csv_header() { return "R,value,optimizer,boundary"; }

std::string curve_csv_row(const CurveSample& s) {
    std::ostringstream os;
    os << fmt_double(s.r) << ',' << fmt_double(s.value) << ',' << fmt_double(s.optimizer) << ','
       << (s.boundary ? 1 : 0);
    return os.str();
}

RelationsReport exponent_relations_check(const JointSubDistribution& p,
                                         std::span<const double> r_grid) {
    RelationsReport rep;
    const double slack = 1e-9;
    for (double r : r_grid) {
        double ed = exponent(p, r, ExponentKind::e_d).value;
        double ei = exponent(p, r, ExponentKind::e_I).value;
        double edq = exponent(p, r, ExponentKind::e_d_quantum_ref).value;
        double eiq = exponent(p, r, ExponentKind::e_I_quantum_ref).value;
        auto fail = [&](const std::string& what) {
            rep.ok = false;
            rep.violations.push_back(what + " at R=" + fmt_double(r));
        };
        if (0.5 * ei > ed + slack) fail("e_I/2 <= e_d");
        if (ed > ei + slack) fail("e_d <= e_I");
        if (edq > ed + slack) fail("quantum_ref d <= e_d");
        if (eiq > ei + slack) fail("quantum_ref I <= e_I");
    }
    return rep;
}

double second_order(const JointSubDistribution& p, double r) {
    double v = variance_v(p);
    if (v <= 1e-14) throw DegenerateVariance();
    return 2.0 * normal_cdf(r / std::sqrt(v));
}

double equivocation_rate(const JointSubDistribution& p, double r, bool* exponent_regime) {
    double h = cond_shannon(p);
    if (r < h) {
        if (exponent_regime) *exponent_regime = true;
        return 0.0;
    }
    if (exponent_regime) *exponent_regime = false;
    return r - h;
}

JointSubDistribution tilted_distribution(const JointSubDistribution& p, double s) {
    if (!p.is_normalized()) throw NotNormalized("tilting assumes normalized P");
    if (s < 0.0) throw DomainError("tilt parameter must be nonnegative");
    if (s == 0.0) return p;
    std::vector<double> pe = p.marginal_e();
    std::vector<double> cond = p.conditional_table();
    const std::size_t ne = p.size_e(), na = p.size_a();

    std::vector<double> out(na * ne, 0.0);
    std::vector<double> colw(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        if (pe[e] <= 0.0) continue;
        std::vector<double> logs;
        for (std::size_t a = 0; a < na; ++a) {
            double w = cond[a * ne + e];
            if (w > 0.0) logs.push_back((1.0 + s) * std::log(w));
        }
        double log_s_e = log_sum_exp(logs);
        colw[e] = std::exp(std::log(pe[e]) + log_s_e / (1.0 + s));
        for (std::size_t a = 0; a < na; ++a) {
            double w = cond[a * ne + e];
            if (w <= 0.0) continue;
            out[a * ne + e] = std::exp((1.0 + s) * std::log(w) - log_s_e) * colw[e];
        }
    }
    double z = pairwise_sum(colw);
    if (z <= 0.0) throw DomainError("degenerate tilt");
    for (double& v : out) v /= z;
    return JointSubDistribution(na, ne, std::move(out));
}

TypeExponentReport type_exponent_check(const JointSubDistribution& p, double r_prime,
                                       unsigned grid_per_dim, double tol) {
    if (p.size_a() != 2 || p.size_e() != 2) throw ShapeError("the grid oracle is wired for 2x2");
    for (double v : p.data())
        if (v <= 0.0) throw DomainError("the grid oracle needs strictly positive P");

    const unsigned g = grid_per_dim;
    const double* base = p.data().data();
    double lhs = kInf;
    double m[4];
    for (unsigned i = 0; i <= g; ++i)
        for (unsigned j = 0; i + j <= g; ++j)
            for (unsigned k = 0; i + j + k <= g; ++k) {
                m[0] = static_cast<double>(i) / g;
                m[1] = static_cast<double>(j) / g;
                m[2] = static_cast<double>(k) / g;
                m[3] = 1.0 - m[0] - m[1] - m[2];
                if (m[3] < 0.0) m[3] = 0.0;
                // layout: m[a*2+e]; columns e and e+2
                double pe0 = m[0] + m[2], pe1 = m[1] + m[3];
                double div = 0.0, joint_ent = 0.0;
                for (int t = 0; t < 4; ++t) {
                    if (m[t] <= 0.0) continue;
                    double lm = std::log(m[t]);
                    div += m[t] * (lm - std::log(base[t]));
                    joint_ent -= m[t] * lm;
                }
                double marg_ent = 0.0;
                if (pe0 > 0.0) marg_ent -= pe0 * std::log(pe0);
                if (pe1 > 0.0) marg_ent -= pe1 * std::log(pe1);
                double h = joint_ent - marg_ent;
                if (div + h <= r_prime + 1e-12 && div < lhs) lhs = div;
            }

    auto f = [&](double s) { return s * (s == 0.0 ? cond_shannon(p) : cond_renyi_up(p, s)) - s * r_prime; };
    ScalarOpt o = maximize_scalar(f, 0.0, kSCap, 1024, 1e-10);
    double rhs = std::max(0.0, o.value);

    TypeExponentReport rep;
    rep.lhs_grid = lhs;
    rep.rhs_closed = rhs;
    rep.gap = lhs - rhs;
    rep.ok = std::isfinite(lhs) && std::abs(rep.gap) <= tol;
    return rep;
}

}  // namespace pa
