#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pa/dist.hpp"
#include "pa/entropy.hpp"
#include "pa/hash.hpp"

namespace pa {

/// Outcome of a bound evaluation. `m` is the output size M (stored as a
/// double so i.i.d. rates e^{nR} fit), `value` is in nats for the I' criterion
/// and is an L1 distance for d1'.
struct BoundReport {
    std::string method;
    std::string criterion;
    double m = 0.0;
    double eps = 1.0;
    unsigned iid_n = 1;
    double value = 0.0;
    double s_star = std::numeric_limits<double>::quiet_NaN();
    double r_prime = std::numeric_limits<double>::quiet_NaN();
    double c = std::numeric_limits<double>::quiet_NaN();
    std::string q_tag;  // which Q_E realized the optimum
    std::optional<double> lower_bound;
    bool boundary_hit = false;  // optimizer ended on the s-cap / limit branch
};

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

/// Plain hashing bound: d1': sqrt(eps) sqrt(M) exp(-H_2(A|E|P||Q)/2);
/// I' (normalized P): log(1 + eps M exp(-H_2_down(P))).
BoundReport bound_simple(const JointSubDistribution& p, std::span<const double> q, double m,
                         double eps, Criterion crit);

/// Collision-entropy smoothing bounds at a fixed s.
/// d1' (s in (0,1/2]): (2+sqrt(eps)) M^s exp(-s H_up_{1/(1-s)});
/// I'  (s in (0,1]):   eta(M^s exp(-s H_down_{1+s}), eps + log M).
/// `iid_n` scales the entropies additively (single-letter lift).
BoundReport bound_renyi2(const JointSubDistribution& p, double m, double eps, Criterion crit,
                         double s, unsigned iid_n = 1);

/// bound_renyi2 minimized over its admissible s-range.
BoundReport bound_renyi2_opt(const JointSubDistribution& p, double m, double eps, Criterion crit,
                             unsigned iid_n = 1);

/// Tail-probability (information-spectrum) form of the min-entropy-smoothing
/// bounds. R' runs over the finite breakpoint set of the log-likelihood
/// spectrum (the objective is monotone between atoms). For d1' the bound is
/// additionally minimized over Q_E in {P_E} union {up-variant optimizers on an
/// s-grid}; the I' form is tied to Q_E = P_E. The report carries the c-lower
/// bound evaluated on the same spectrum.
BoundReport bound_min_tail(const JointSubDistribution& p, double m, double eps, Criterion crit,
                           unsigned iid_n = 1, double c = 2.0);

/// Chernoff-optimized closed form of the min-entropy-smoothing bounds:
/// d1': (2+sqrt(eps)) min_{s>=0} exp((s log M - s H_up_{1+s})/(1+2s));
/// I':  eta(min_{s>=0} exp((s log M - s H_down_{1+s})/(1+s)), eps + log M).
BoundReport bound_min_chernoff(const JointSubDistribution& p, double m, double eps, Criterion crit,
                               unsigned iid_n = 1);

/// Equivocation-grade bound on E I':
/// min_{R'} eta(min_{s>=0} e^{s(R'-H_down_{1+s})}, log M) + log(1+eps M e^{-R'}).
BoundReport bound_equivocation(const JointSubDistribution& p, double m, double eps,
                               unsigned iid_n = 1);

/// Ground truth: E_X criterion(f_X(A)|E) by full family enumeration. Every
/// applicable bound must dominate this value.
double exact_leakage(const JointSubDistribution& p, const HashFamily& fam, Criterion crit);

}  // namespace pa
