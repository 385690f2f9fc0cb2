#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pa/dist.hpp"

namespace pa {

/// Renyi relative entropy D_{1+s}(P||Q) = (1/s) log sum P^{1+s} Q^{-s} in
/// nats. s = 0 evaluates the Kullback-Leibler limit (valid for normalized
/// inputs). A support violation with s > 0 yields +infinity, not an error.
double renyi_divergence(std::span<const double> p, std::span<const double> q, double s);

/// H_{1+s}(A|E|P||Q) = (-1/s) log sum_{a,e} P(a,e)^{1+s} Q(e)^{-s}.
/// s = 0 evaluates -sum P log(P/Q).
double cond_renyi_rel(const JointSubDistribution& p, std::span<const double> q, double s);

/// H_min(A|E|P||Q) = -log max_{(a,e): Q(e)>0} P(a,e)/Q(e).
double cond_min_rel(const JointSubDistribution& p, std::span<const double> q);

/// Down variant: Q = P_{E,norm}.
double cond_renyi_down(const JointSubDistribution& p, double s);
double cond_min_down(const JointSubDistribution& p);

/// Up variant, the closed form -(1+s)/s log sum_e (sum_a P^{1+s})^{1/(1+s)},
/// valid for s in [-1, inf) \ {0}; s = 0 evaluates the Shannon limit.
double cond_renyi_up(const JointSubDistribution& p, double s);

/// The maximizing Q_E of the up variant:
/// Q(e) proportional to (sum_a P(a,e)^{1+s})^{1/(1+s)}.
std::vector<double> renyi_up_optimizer(const JointSubDistribution& p, double s);

/// H(A|E|P) = -sum P log(P / P_{E,norm}).
double cond_shannon(const JointSubDistribution& p);

/// Limit of the up/down family as the order goes to infinity:
/// up: -log sum_e max_a P(a,e); down: -log max P_{A|E}.
double cond_up_limit_min(const JointSubDistribution& p);

/// Gallager function phi(s) = log sum_e (sum_a P^{1/(1-s)})^{1-s}, 0 < s < 1.
double gallager_phi(const JointSubDistribution& p, double s);

/// Order selector mirroring the up/down/relative taxonomy. `min_order` wins
/// over `s` and evaluates the exact min-entropy (not a large-s proxy).
struct RenyiOrder {
    enum class Variant { down, up, relative };
    Variant variant = Variant::down;
    double s = 1.0;
    bool min_order = false;

    static RenyiOrder down(double s) { return {Variant::down, s, false}; }
    static RenyiOrder up(double s) { return {Variant::up, s, false}; }
    static RenyiOrder relative(double s) { return {Variant::relative, s, false}; }
    static RenyiOrder min_down() { return {Variant::down, 0.0, true}; }
    static RenyiOrder min_relative() { return {Variant::relative, 0.0, true}; }
};

double cond_renyi(const JointSubDistribution& p, const RenyiOrder& order,
                  std::span<const double> q = {});

// ---- security criteria ----

enum class Criterion { d1, d1prime, I, Iprime };

/// d1 = ||P - P_A x P_E||_1, d1' = ||P - P_mix x P_E||_1,
/// I = D(P || P_A x P_E), I' = D(P || P_mix x P_E) = log|A| - H(A|E|P).
/// I and I' require a normalized joint distribution (NotNormalized).
double criterion_value(const JointSubDistribution& p, Criterion c);

/// Renner's conditional L2 distance from uniform relative to Q_E.
double d2_distance(const JointSubDistribution& p, std::span<const double> q);

// ---- smoothing ----

struct SmoothingMin {
    double distance;
    JointSubDistribution optimizer;
};

/// min { ||P - P'||_1 : H_min(A|E|P'||Q) >= R }. The optimizer caps each cell
/// at exp(-R) Q(e); its distance is returned.
SmoothingMin smoothing_distance_min(const JointSubDistribution& p, std::span<const double> q, double r);

struct SmoothingResult {
    double epsilon1 = 0.0;  // achieved L1 distance
    double r = 0.0;         // smooth min entropy value
    bool infinite = false;  // epsilon1 >= total mass: P' = 0 is admissible
    std::optional<JointSubDistribution> smoothed;
};

/// H_min^{eps1}(A|E|P||Q): largest R whose smoothing distance is <= eps1,
/// located by bisection to 1e-10. With Q = P_E this also equals the
/// down-constrained variant (the optimizer satisfies P' <= P).
SmoothingResult smooth_min_entropy(const JointSubDistribution& p, std::span<const double> q, double eps1);

struct SmoothH2 {
    double epsilon1;
    double h2;
};

/// Information-spectrum smoothing of the collision entropy: zero the cells
/// with P_{A|E}(a|e) > 1/M and report the L1 cost together with
/// H_2(A|E|P_trunc || P_E). Requires a normalized P.
SmoothH2 smooth_h2_info_spectrum(const JointSubDistribution& p, double m);

struct SmoothH2Bounds {
    double lower;          // best truncation with L1 cost <= eps1
    double upper;          // log|A| - 2 log(mass - eps1), Cauchy-Schwarz
    double achieved_eps1;  // cost of the truncation behind `lower`
};

/// Two-sided envelope for the (algorithmically open) smoothed collision
/// entropy H_2^{down, eps1}.
SmoothH2Bounds smooth_h2_bounds(const JointSubDistribution& p, double eps1);

/// V(P) = Var_P[ log P_{A|E}(a|e) ] for normalized P.
double variance_v(const JointSubDistribution& p);

// ---- analytic derivatives of s -> s H_up_{1+s} (normalized P) ----

double d_s_h_up(const JointSubDistribution& p, double s);   // first derivative
double d2_s_h_up(const JointSubDistribution& p, double s);  // second derivative (<= 0)

}  // namespace pa
