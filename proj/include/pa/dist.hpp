#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pa/errors.hpp"
#include "pa/field.hpp"

namespace pa {

/// Joint sub-distribution on a finite product alphabet A x E. Entries are
/// nonnegative and total mass is at most 1 (tolerance 1e-12). Immutable after
/// construction.
class JointSubDistribution {
public:
    JointSubDistribution(std::size_t size_a, std::size_t size_e, std::vector<double> mass);

    /// Convenience: rows are A symbols, columns are E symbols.
    static JointSubDistribution from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size_a() const { return size_a_; }
    std::size_t size_e() const { return size_e_; }
    double at(std::size_t a, std::size_t e) const { return mass_[a * size_e_ + e]; }
    const std::vector<double>& data() const { return mass_; }

    double total_mass() const { return total_; }
    bool is_normalized() const { return normalized_; }

    std::vector<double> marginal_a() const;
    std::vector<double> marginal_e() const;
    /// P_{E,norm}: the E marginal rescaled to total mass one.
    std::vector<double> marginal_e_normalized() const;
    /// P_{A|E=e}(a) = P(a,e) / P_{E,norm}(e); throws ZeroConditioning when the
    /// normalized marginal puts no mass on e.
    std::vector<double> conditional_given_e(std::size_t e) const;
    /// Full conditional table P_{A|E}(a|e) with zero columns left at zero.
    std::vector<double> conditional_table() const;

    JointSubDistribution normalized_copy() const;

    /// n-fold product on A^n x E^n. Throws TooLarge beyond the cell cap
    /// (default 1e7 cells, override via PA_BOUNDS_CELL_CAP or the argument).
    JointSubDistribution iid_power(unsigned n, std::size_t cell_cap = 0) const;

    /// Push A through a total map f: A -> B; mass is conserved per E column.
    JointSubDistribution pushforward(std::span<const int> f, std::size_t size_b) const;

    static std::vector<double> uniform_mix(std::size_t n);

    static std::size_t default_cell_cap();

private:
    std::size_t size_a_, size_e_;
    std::vector<double> mass_;
    double total_ = 0.0;
    bool normalized_ = false;
};

/// Distribution of the log-likelihood ratio log(P_{A,E}/Q_E) as a list of
/// (value, weight) atoms sorted by value. Atoms closer than 1e-12 in value are
/// merged; this is the single source of approximation in tail computations.
class Spectrum {
public:
    struct Atom {
        double value;
        double weight;
    };

    static constexpr double kMergeTol = 1e-12;

    /// Atoms of log(P(a,e)/Q(e)) under P. Q must be normalized and positive
    /// wherever P_E is (SupportMismatch otherwise).
    static Spectrum single_letter(const JointSubDistribution& p, std::span<const double> q);

    /// Spectrum of an i.i.d. sum of n independent copies.
    Spectrum power(unsigned n, std::size_t atom_cap = 20'000'000) const;

    Spectrum convolve(const Spectrum& other) const;

    /// P{ value > -R } (strict=true) or P{ value >= -R } (strict=false).
    double tail(double r, bool strict) const;

    double total_weight() const;
    const std::vector<Atom>& atoms() const { return atoms_; }
    /// Sum of weights with index >= i (deterministic suffix sums).
    std::vector<double> suffix_weights() const;

    static Spectrum from_atoms(std::vector<Atom> atoms);

private:
    std::vector<Atom> atoms_;  // sorted ascending by value
};

/// spectrum of log(P^n/Q^n) built by n-fold atom convolution.
Spectrum spectrum_power(const JointSubDistribution& p, std::span<const double> q, unsigned n);

/// Tail probability P{ log(P/Q) > -R } (or >= when strict=false) of the
/// single-shot distribution.
double tail_probability(const JointSubDistribution& p, std::span<const double> q, double r, bool strict);

/// Convolution with a shift distribution on A = F_q^n:
/// (P * W)(a, e) = sum_w W(w) P(a - w, e).
JointSubDistribution convolve_shift(const JointSubDistribution& p, const FieldSpec& spec, unsigned n,
                                    std::span<const double> p_w);

}  // namespace pa
