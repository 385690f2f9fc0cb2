#include "pa/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pa {

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double log_sum_exp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;  // empty or all -inf (or +inf)
    std::vector<double> d;
    d.reserve(xs.size());
    for (double x : xs) d.push_back(std::exp(x - m));
    return m + std::log(pairwise_sum(d));
}

double eta(double x, double y) {
    if (x <= 0.0) return 0.0;
    return -x * std::log(x) + x * y;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {

ScalarOpt golden_refine(const std::function<double(double)>& f, double a, double b, double xtol) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 400 && (b - a) > xtol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    ScalarOpt r;
    r.x = 0.5 * (a + b);
    r.value = f(r.x);
    return r;
}

}  // namespace

ScalarOpt minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int grid, double xtol) {
    if (!(hi > lo)) {
        ScalarOpt r;
        r.x = lo;
        r.value = f(lo);
        r.at_lower = r.at_upper = true;
        return r;
    }
    if (grid < 2) grid = 2;
    int best = 0;
    double bestv = std::numeric_limits<double>::infinity();
    std::vector<double> xs(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
        xs[static_cast<std::size_t>(i)] = x;
        double v = f(x);
        if (v < bestv) {
            bestv = v;
            best = i;
        }
    }
    double a = xs[static_cast<std::size_t>(std::max(0, best - 1))];
    double b = xs[static_cast<std::size_t>(std::min(grid - 1, best + 1))];
    ScalarOpt r = golden_refine(f, a, b, xtol);
    if (r.value > bestv) {  // keep the grid winner when refinement is no better
        r.x = xs[static_cast<std::size_t>(best)];
        r.value = bestv;
    }
    r.at_lower = r.x <= lo + 2 * xtol && best == 0;
    r.at_upper = r.x >= hi - 2 * xtol && best == grid - 1;
    return r;
}

ScalarOpt maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int grid, double xtol) {
    ScalarOpt r = minimize_scalar([&](double x) { return -f(x); }, lo, hi, grid, xtol);
    r.value = -r.value;
    return r;
}

std::uint64_t Rng::next_() {
    // splitmix64: stable across platforms, no library dependence
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) { return n ? next_() % n : 0; }

std::uint64_t Rng::raw() { return next_(); }

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pa
