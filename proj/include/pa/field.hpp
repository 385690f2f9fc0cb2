#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pa/errors.hpp"

namespace pa {

/// Arithmetic context for F_q, q = p^k <= 256. Elements are encoded as
/// integers in [0, q): the base-p digits of the code are the coordinates in
/// the polynomial basis modulo the (irreducible, monic) modulus polynomial.
///
/// Instances returned by FieldSpec::get are canonical and immutable; they can
/// be shared freely across threads.
class FieldSpec {
public:
    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    unsigned q() const { return q_; }
    /// Modulus coefficients over F_p, constant term first, length k+1, monic.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
    unsigned sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }
    unsigned neg(unsigned a) const { return neg_[a]; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
    unsigned inv(unsigned a) const {
        if (a == 0) throw DivisionByZero();
        return inv_[a];
    }
    /// Absolute trace F_q -> F_p, Tr(z) = z + z^p + ... + z^(p^(k-1)).
    unsigned trace(unsigned a) const { return trace_[a]; }

    bool same(const FieldSpec& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

    /// Canonical field for (p, k) from the shipped modulus table (Conway
    /// polynomials). Throws DomainError when p is not prime, p^k > 256, or
    /// no table entry exists.
    static const FieldSpec& get(unsigned p, unsigned k);

    /// Field with a caller-supplied modulus; irreducibility is verified by
    /// exhaustive trial division.
    FieldSpec(unsigned p, unsigned k, std::vector<unsigned> modulus);

private:
    unsigned p_, k_, q_;
    std::vector<unsigned> modulus_;
    std::vector<std::uint16_t> add_, mul_;
    std::vector<std::uint16_t> neg_, inv_;
    std::vector<std::uint8_t> trace_;

    void build_tables_();
};

struct FieldElement {
    const FieldSpec* spec = nullptr;
    unsigned rep = 0;

    FieldElement() = default;
    FieldElement(const FieldSpec& s, unsigned r) : spec(&s), rep(r) {
        if (rep >= s.q()) throw DomainError("element code out of range");
    }
};

inline void check_same_spec(const FieldElement& a, const FieldElement& b) {
    if (!a.spec || !b.spec || !a.spec->same(*b.spec)) throw SpecMismatch();
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_spec(a, b);
    return {*a.spec, a.spec->add(a.rep, b.rep)};
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same_spec(a, b);
    return {*a.spec, a.spec->sub(a.rep, b.rep)};
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_spec(a, b);
    return {*a.spec, a.spec->mul(a.rep, b.rep)};
}
inline FieldElement operator-(const FieldElement& a) { return {*a.spec, a.spec->neg(a.rep)}; }
inline FieldElement inverse(const FieldElement& a) { return {*a.spec, a.spec->inv(a.rep)}; }
inline bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.spec->same(*b.spec) && a.rep == b.rep;
}

/// Bilinear pairing F_q^n x F_q^n -> F_p: sum_j Tr(x_j * y_j). Non-degenerate
/// because the absolute trace is a nonzero functional.
unsigned pairing(std::span<const FieldElement> x, std::span<const FieldElement> y);

/// Same pairing on index-coded vectors (base-q digit i of the index is
/// coordinate i).
unsigned pairing_indexed(const FieldSpec& spec, unsigned n, std::uint64_t a_code, std::uint64_t b_code);

/// Decode an index in [0, q^n) into its n base-q digits (coordinate order).
void decode_vector(const FieldSpec& spec, unsigned n, std::uint64_t code, unsigned* out);
std::uint64_t encode_vector(const FieldSpec& spec, unsigned n, const unsigned* digits);

}  // namespace pa
