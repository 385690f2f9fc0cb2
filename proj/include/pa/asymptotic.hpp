#pragma once

#include <span>
#include <string>
#include <vector>

#include "pa/dist.hpp"

namespace pa {

/// Large-deviation exponents of the leakage bounds, per symbol, in nats.
/// The *_tilde pair is what min-entropy smoothing achieves; e_d / e_I is the
/// strictly better collision-entropy pair. The quantum_ref variants are the
/// commutative-case specializations of the known quantum exponents, kept for
/// comparison.
enum class ExponentKind {
    e_d,             // max_{0<=t<=1/2} t (H_up_{1/(1-t)} - R)
    e_I,             // max_{0<=s<=1} s (H_down_{1+s} - R)
    e_d_tilde,       // max_{s>=0} s (H_up_{1+s} - R) / (1+2s)
    e_I_tilde,       // max_{s>=0} (s H_down_{1+s} - s R) / (1+s)
    e_d_bar,         // max_{t>=0} t (H_up_{1/(1-t)} - R)
    e_d_quantum_ref, // max_{0<=t<=1/2} t/(2(1-t)) (H_up_{1/(1-t)} - R)
    e_I_quantum_ref  // max_{0<=s<=1} s/(2-s) (H_down_{1+s} - R)
};

std::string to_string(ExponentKind k);

struct ExponentResult {
    double value = 0.0;      // clamped at 0
    double optimizer = 0.0;  // the s or t realizing the max (inf for the limit branch)
    bool boundary = false;   // supremum realized at the s-cap or order-infinity limit
};

ExponentResult exponent(const JointSubDistribution& p, double r, ExponentKind kind);

struct CurveSample {
    double r;
    double value;
    double optimizer;
    bool boundary;
};

std::vector<CurveSample> exponent_curve(const JointSubDistribution& p, std::span<const double> r_grid,
                                        ExponentKind kind);

std::string curve_csv_header();
std::string curve_csv_row(const CurveSample& s);

struct RelationsReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks 0.5 e_I <= e_d <= e_I and quantum_ref <= classical at every grid
/// rate (slack 1e-9).
RelationsReport exponent_relations_check(const JointSubDistribution& p, std::span<const double> r_grid);

/// Second-order limit of the optimal L1 distinguishability at key length
/// n H + sqrt(n) R: 2 Phi(R / sqrt(V(P))). Throws DegenerateVariance for
/// constant conditional information.
double second_order(const JointSubDistribution& p, double r);

/// Asymptotic per-symbol modified mutual information at rate R >= H(A|E):
/// R - H(A|E). Below the entropy rate the exponent regime applies and the
/// rate is 0 (flagged via *exponent_regime).
double equivocation_rate(const JointSubDistribution& p, double r, bool* exponent_regime = nullptr);

/// Exponentially tilted distribution: conditionals raised to the power 1+s
/// with the matching marginal reweighting. s = 0 returns P itself.
JointSubDistribution tilted_distribution(const JointSubDistribution& p, double s);

struct TypeExponentReport {
    double lhs_grid;    // min { D(P'||P) : D(P'||P) + H(A|E|P') <= R' } on a simplex grid
    double rhs_closed;  // max_{s>=0} s H_up_{1+s} - s R'
    double gap;
    bool ok;            // |gap| within the grid tolerance
};

/// Numeric check of the Legendre-type identity between the constrained
/// type minimization and the tilted closed form (|A| = |E| = 2 only).
TypeExponentReport type_exponent_check(const JointSubDistribution& p, double r_prime,
                                       unsigned grid_per_dim = 200, double tol = 2e-2);

}  // namespace pa
