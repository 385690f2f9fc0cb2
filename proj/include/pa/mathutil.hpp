#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pa {

/// Pairwise (tree) summation in index order. Deterministic for a fixed input
/// order regardless of chunking elsewhere.
double pairwise_sum(std::span<const double> xs);

/// log(sum(exp(x))) with max-subtraction; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

/// eta(x, y) = -x log x + x y, continuously extended with eta(0, y) = 0.
double eta(double x, double y);

/// Standard normal CDF via erfc; relative accuracy ~1e-15.
double normal_cdf(double x);

struct ScalarOpt {
    double x = 0.0;
    double value = 0.0;
    bool at_lower = false;
    bool at_upper = false;
};

/// Minimize f on [lo, hi]: coarse grid scan (`grid` points, endpoints included,
/// lowest index wins ties) followed by golden-section refinement between the
/// best point's neighbours. Tolerance is on x.
ScalarOpt minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int grid = 1024, double xtol = 1e-10);

/// Maximize f on [lo, hi]; same scheme as minimize_scalar.
ScalarOpt maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int grid = 1024, double xtol = 1e-10);

/// Deterministic xorshift-free RNG wrapper: mt19937_64 with explicit 53-bit
/// uniform doubles so sequences replay bit-exactly from the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform();              // [0, 1)
    std::uint64_t below(std::uint64_t n);
    std::uint64_t raw();

private:
    std::uint64_t state_;
    std::uint64_t next_();
};

/// %.17g formatting shared by CSV and JSON writers so outputs are byte-stable.
std::string fmt_double(double v);

}  // namespace pa
