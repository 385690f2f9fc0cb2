#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pa/field.hpp"

namespace pa {

/// A linear map F_q^n -> F_q^m stored as an m x n matrix of element codes.
struct LinearHash {
    const FieldSpec* spec = nullptr;
    unsigned n = 0, m = 0;
    std::vector<unsigned> mat;  // row-major, mat[i*n + j]

    unsigned entry(unsigned i, unsigned j) const { return mat[i * n + j]; }
    /// Apply to an index-coded input vector; returns the index-coded output.
    std::uint64_t apply(std::uint64_t a_code) const;
    /// Map table over the whole domain (size q^n), values in [0, q^m).
    std::vector<int> map_table() const;
};

enum class FamilyKind { full_random, toeplitz, modified_toeplitz, custom };

std::string to_string(FamilyKind k);

/// A finite random linear hash family: members with probabilities summing to
/// one. Enumeration is exact; the member count q^(#seeds) is capped at 2^24.
struct HashFamily {
    const FieldSpec* spec = nullptr;
    unsigned n = 0, m = 0;
    FamilyKind kind = FamilyKind::custom;
    std::vector<LinearHash> members;
    std::vector<double> probs;
    std::vector<double> seed_symbol_dist;  // empty means uniform seeds

    std::size_t size() const { return members.size(); }
};

/// Build a family by exhaustive seed enumeration. `seed_symbol_dist`, when
/// given, is a distribution on F_q applied i.i.d. to every seed symbol.
/// modified_toeplitz is the concatenation (X, I) of an m x (n-m) Toeplitz
/// block (n-1 seed symbols) and the identity; it requires m < n.
/// Toeplitz convention: entry(i, j) = seed[i - j + (cols-1)].
HashFamily make_family(FamilyKind kind, const FieldSpec& spec, unsigned n, unsigned m,
                       std::span<const double> seed_symbol_dist = {});

HashFamily custom_family(const FieldSpec& spec, unsigned n, unsigned m,
                         std::vector<LinearHash> members, std::vector<double> probs);

// ---- linear algebra over F_q ----

/// Reduced row echelon basis of the row space (empty rows dropped).
std::vector<std::vector<unsigned>> row_space_basis(const LinearHash& h);
/// Basis of the kernel of h.
std::vector<std::vector<unsigned>> kernel_basis(const LinearHash& h);
unsigned rank(const LinearHash& h);
/// Membership of an index-coded vector in the span of an RREF basis.
bool in_span(const FieldSpec& spec, unsigned n, std::span<const std::vector<unsigned>> rref_basis,
             std::uint64_t code);
/// Enumerate all q^dim index-coded elements of the span.
std::vector<std::uint64_t> span_elements(const FieldSpec& spec, unsigned n,
                                         std::span<const std::vector<unsigned>> basis);

// ---- universality parameters (exact, by enumeration) ----

/// epsilon = |B| max_{a1 != a2} Pr[f(a1) = f(a2)]; for linear families this is
/// q^m max_{d != 0} Pr[f(d) = 0].
double universality_epsilon(const HashFamily& fam);

struct DualUniversality {
    double epsilon;            // q^{n-m} max_{x != 0} Pr[x in rowspace(f)]
    double epsilon_effective;  // q^{t_max} max_{x != 0} Pr[x in rowspace(f)]
    unsigned t_min;            // minimum kernel dimension over members
    unsigned t_max;            // maximum kernel dimension over members
    double surjective_fraction;
};

/// `epsilon` is the conventional parameter, normalized as if every kernel had
/// dimension n - m; the hashing lemmas assume exactly that, so it certifies
/// families whose members are all surjective. `epsilon_effective` replaces
/// n - m by the worst kernel dimension and is the sound parameter for
/// ensembles with rank-deficient members (the two coincide when every member
/// has rank m).
DualUniversality dual_universality(const HashFamily& fam);
double dual_universality_epsilon(const HashFamily& fam);

/// The sub-family of members with full rank m, probabilities renormalized.
/// Throws DomainError when no member is surjective.
HashFamily surjective_restriction(const HashFamily& fam);

/// An ensemble of distributions on F_q^n (each with a probability weight).
struct ShiftEnsemble {
    const FieldSpec* spec = nullptr;
    unsigned n = 0;
    std::vector<std::vector<double>> dists;
    std::vector<double> probs;
};

/// Uniform-on-kernel ensemble of a family (weights follow the family).
ShiftEnsemble kernel_code_ensemble(const HashFamily& fam);

/// delta = max_{x != 0} sqrt( E_X |E_W omega_p^{(x . W)}|^2 ). Character sums
/// are snapped to the exact 0/1 values the code case produces.
double delta_bias(const ShiftEnsemble& ens);

struct ConversionEpsilon {
    double verbatim;   // q (1 - q^{ m} eps) + (eps - 1) q^{n-m}
    double corrected;  // q (1 - q^{-m} eps) + (eps - 1) q^{n-m}
};

/// Universality-to-dual-universality conversion for surjective linear
/// families, evaluated in both printed and sign-corrected readings.
ConversionEpsilon conversion_epsilon(double eps, unsigned n, unsigned m, unsigned q);

struct NonuniformSeedBound {
    double bound;       // q^{n-1} exp(-H_min(seed vector))
    double enumerated;  // exact dual universality epsilon
    bool holds;
};

/// Dual-universality guarantee for a modified Toeplitz family with i.i.d.
/// non-uniform seed symbols.
NonuniformSeedBound nonuniform_seed_epsilon(const HashFamily& fam);

struct FamilyAudit {
    std::string kind;
    unsigned q, n, m;
    std::size_t member_count;
    double epsilon_universal;
    double epsilon_dual;
    double epsilon_dual_effective;
    double delta_bias;
    unsigned t_min;
    unsigned t_max;
    double surjective_fraction;
};

FamilyAudit audit_family(const HashFamily& fam);

}  // namespace pa
