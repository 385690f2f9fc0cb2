#include "pa/field.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace pa {

namespace {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Poly = std::vector<unsigned>;  // coefficients over F_p, constant first

unsigned poly_deg(const Poly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i]) return static_cast<unsigned>(i);
    return 0;
}

// remainder of a mod b over F_p, b nonzero
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
    unsigned db = poly_deg(b);
    unsigned lead_inv = 0;
    for (unsigned i = 1; i < p; ++i)
        if (b[db] * i % p == 1) lead_inv = i;
    while (true) {
        unsigned da = poly_deg(a);
        if (da < db || (da == 0 && a[0] == 0)) break;
        if (a[da] == 0) break;
        unsigned coef = a[da] * lead_inv % p;
        unsigned shift = da - db;
        for (unsigned i = 0; i <= db; ++i) {
            unsigned s = coef * b[i] % p;
            a[i + shift] = (a[i + shift] + p - s) % p;
        }
        if (poly_deg(a) == da && a[da] != 0) break;  // no progress (cannot happen for monic b)
    }
    a.resize(db == 0 ? 1 : db);
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

bool poly_is_zero(const Poly& f) {
    for (unsigned c : f)
        if (c) return false;
    return true;
}

// exhaustive trial division by all monic polynomials of degree 1..k/2
bool is_irreducible(const Poly& f, unsigned p, unsigned k) {
    if (k == 1) return true;
    for (unsigned d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<unsigned>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

// Conway polynomials for all prime powers q = p^k <= 256, constant term first.
const std::map<std::pair<unsigned, unsigned>, Poly>& conway_table() {
    static const std::map<std::pair<unsigned, unsigned>, Poly> t = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return t;
}

}  // namespace

FieldSpec::FieldSpec(unsigned p, unsigned k, std::vector<unsigned> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw DomainError("field characteristic must be prime");
    if (k_ == 0) throw DomainError("extension degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k_; ++i) q *= p_;
    if (q > 256) throw DomainError("field size capped at 256");
    q_ = static_cast<unsigned>(q);
    if (modulus_.size() != k_ + 1) throw DomainError("modulus must have k+1 coefficients");
    for (unsigned c : modulus_)
        if (c >= p_) throw DomainError("modulus coefficient out of range");
    if (modulus_[k_] != 1) throw DomainError("modulus must be monic");
    if (!is_irreducible(modulus_, p_, k_)) throw DomainError("modulus is reducible");
    build_tables_();
}

void FieldSpec::build_tables_() {
    add_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    trace_.assign(q_, 0);

    auto digits = [&](unsigned code) {
        Poly d(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = code % p_;
            code /= p_;
        }
        return d;
    };
    auto pack = [&](const Poly& d) {
        unsigned code = 0;
        for (unsigned i = k_; i-- > 0;) code = code * p_ + (i < d.size() ? d[i] : 0);
        return code;
    };

    for (unsigned a = 0; a < q_; ++a) {
        Poly da = digits(a);
        Poly dn(k_, 0);
        for (unsigned i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<std::uint16_t>(pack(dn));
        for (unsigned b = 0; b < q_; ++b) {
            Poly db = digits(b);
            Poly ds(k_, 0);
            for (unsigned i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
            add_[a * q_ + b] = static_cast<std::uint16_t>(pack(ds));

            Poly prod(2 * k_ - 1, 0);
            for (unsigned i = 0; i < k_; ++i)
                for (unsigned j = 0; j < k_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            Poly rem = k_ > 1 ? poly_mod(prod, modulus_, p_) : Poly{prod[0] % p_};
            mul_[a * q_ + b] = static_cast<std::uint16_t>(pack(rem));
        }
    }
    for (unsigned a = 1; a < q_; ++a)
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint16_t>(b);

    for (unsigned a = 0; a < q_; ++a) {
        unsigned acc = 0, frob = a;
        for (unsigned i = 0; i < k_; ++i) {
            acc = add_[acc * q_ + frob];
            unsigned next = frob;
            for (unsigned j = 1; j < p_; ++j) next = mul_[next * q_ + frob];
            frob = next;  // frob^p
        }
        if (acc >= p_) throw DomainError("trace left the prime subfield");  // sanity on the table
        trace_[a] = static_cast<std::uint8_t>(acc);
    }
}

const FieldSpec& FieldSpec::get(unsigned p, unsigned k) {
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldSpec>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    Poly mod;
    if (k == 1) {
        mod = {0, 1};  // arithmetic mod p; the linear modulus is never used
    } else {
        auto ct = conway_table().find(key);
        if (ct == conway_table().end()) throw DomainError("no modulus table entry for this field");
        mod = ct->second;
    }
    auto spec = std::make_unique<FieldSpec>(p, k, std::move(mod));
    const FieldSpec& ref = *spec;
    cache.emplace(key, std::move(spec));
    return ref;
}

unsigned pairing(std::span<const FieldElement> x, std::span<const FieldElement> y) {
    if (x.size() != y.size()) throw ShapeError("pairing requires equal-length vectors");
    if (x.empty()) return 0;
    const FieldSpec* spec = x[0].spec;
    unsigned acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        check_same_spec(x[j], y[j]);
        if (!x[j].spec->same(*spec)) throw SpecMismatch();
        acc = (acc + spec->trace(spec->mul(x[j].rep, y[j].rep))) % spec->p();
    }
    return acc;
}

unsigned pairing_indexed(const FieldSpec& spec, unsigned n, std::uint64_t a_code, std::uint64_t b_code) {
    unsigned acc = 0;
    const unsigned q = spec.q();
    for (unsigned j = 0; j < n; ++j) {
        unsigned da = static_cast<unsigned>(a_code % q);
        unsigned db = static_cast<unsigned>(b_code % q);
        a_code /= q;
        b_code /= q;
        acc = (acc + spec.trace(spec.mul(da, db))) % spec.p();
    }
    return acc;
}

void decode_vector(const FieldSpec& spec, unsigned n, std::uint64_t code, unsigned* out) {
    const unsigned q = spec.q();
    for (unsigned j = 0; j < n; ++j) {
        out[j] = static_cast<unsigned>(code % q);
        code /= q;
    }
}

std::uint64_t encode_vector(const FieldSpec& spec, unsigned n, const unsigned* digits) {
    const unsigned q = spec.q();
    std::uint64_t code = 0;
    for (unsigned j = n; j-- > 0;) code = code * q + digits[j];
    return code;
}

}  // namespace pa
