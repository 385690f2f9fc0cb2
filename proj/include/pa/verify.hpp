#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pa/dist.hpp"
#include "pa/mathutil.hpp"

namespace pa::verify {

struct CaseResult {
    std::string id;
    std::string description;
    std::string kind;  // inequality | equality | trend
    bool passed = false;
    std::string detail;
};

struct SuiteOptions {
    std::string corpus = "builtin";  // builtin | random
    std::uint64_t seed = 1;
    int count = 100;
    bool inject_fault = false;  // self-test hook: corrupts one bound by 0.5
};

struct SuiteReport {
    SuiteOptions options;
    std::vector<CaseResult> cases;
    int passed = 0;
    int failed = 0;

    bool ok() const { return failed == 0; }
    nlohmann::json to_json() const;
};

/// Re-derives every cross-module inequality/equality from scratch on the
/// requested corpus. Failures are data, not exceptions.
SuiteReport run_suite(const SuiteOptions& options);

/// Exhaustive maximization of H_{1+s}(A|E|P||Q) over the Q_E simplex
/// (|E| <= 3), with one local refinement pass around the coarse argmax.
double grid_oracle_max_q_h2(const JointSubDistribution& p, double s, int resolution);

/// Exhaustive per-cell grid minimization of ||P - P'||_1 subject to
/// P'(a,e) <= exp(-R) Q(e). Never consults the closed form.
double grid_oracle_smooth_min(const JointSubDistribution& p, std::span<const double> q, double r,
                              int resolution);

/// Constrained simplex-grid minimum of D(P'||P) under D + H(A|E|P') <= R'
/// (2x2 alphabets).
double grid_oracle_simplex_exponent(const JointSubDistribution& p, double r_prime, int resolution);

// corpus helpers shared with the test binaries
JointSubDistribution random_joint(Rng& rng, std::size_t na, std::size_t ne, bool normalized,
                                  bool strictly_positive = true);
JointSubDistribution uniform_conditional_fixture(Rng& rng, std::size_t na, std::size_t ne);

}  // namespace pa::verify
