#include "pa/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "pa/mathutil.hpp"

namespace pa {

JointSubDistribution::JointSubDistribution(std::size_t size_a, std::size_t size_e,
                                           std::vector<double> mass)
    : size_a_(size_a), size_e_(size_e), mass_(std::move(mass)) {
    if (size_a_ == 0 || size_e_ == 0) throw ShapeError("empty alphabet");
    if (mass_.size() != size_a_ * size_e_) throw ShapeError("mass table size mismatch");
    for (double v : mass_)
        if (!(v >= 0.0)) throw DomainError("negative or NaN mass entry");
    total_ = pairwise_sum(mass_);
    if (total_ > 1.0 + 1e-12) throw DomainError("total mass exceeds one");
    normalized_ = std::abs(total_ - 1.0) <= 1e-12;
}

JointSubDistribution JointSubDistribution::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ShapeError("empty alphabet");
    std::size_t ne = rows[0].size();
    std::vector<double> mass;
    mass.reserve(rows.size() * ne);
    for (const auto& r : rows) {
        if (r.size() != ne) throw ShapeError("ragged rows");
        mass.insert(mass.end(), r.begin(), r.end());
    }
    return JointSubDistribution(rows.size(), ne, std::move(mass));
}

std::vector<double> JointSubDistribution::marginal_a() const {
    std::vector<double> m(size_a_, 0.0);
    for (std::size_t a = 0; a < size_a_; ++a)
        m[a] = pairwise_sum(std::span<const double>(mass_.data() + a * size_e_, size_e_));
    return m;
}

std::vector<double> JointSubDistribution::marginal_e() const {
    std::vector<double> m(size_e_, 0.0);
    std::vector<double> col(size_a_);
    for (std::size_t e = 0; e < size_e_; ++e) {
        for (std::size_t a = 0; a < size_a_; ++a) col[a] = mass_[a * size_e_ + e];
        m[e] = pairwise_sum(col);
    }
    return m;
}

std::vector<double> JointSubDistribution::marginal_e_normalized() const {
    std::vector<double> m = marginal_e();
    if (total_ <= 0.0) throw DomainError("zero-mass distribution has no normalized marginal");
    for (double& v : m) v /= total_;
    return m;
}

std::vector<double> JointSubDistribution::conditional_given_e(std::size_t e) const {
    std::vector<double> pe = marginal_e_normalized();
    if (pe[e] <= 0.0) throw ZeroConditioning();
    std::vector<double> c(size_a_);
    for (std::size_t a = 0; a < size_a_; ++a) c[a] = mass_[a * size_e_ + e] / pe[e];
    return c;
}

std::vector<double> JointSubDistribution::conditional_table() const {
    std::vector<double> pe = marginal_e_normalized();
    std::vector<double> t(mass_.size(), 0.0);
    for (std::size_t e = 0; e < size_e_; ++e) {
        if (pe[e] <= 0.0) continue;
        for (std::size_t a = 0; a < size_a_; ++a) t[a * size_e_ + e] = mass_[a * size_e_ + e] / pe[e];
    }
    return t;
}

JointSubDistribution JointSubDistribution::normalized_copy() const {
    if (total_ <= 0.0) throw DomainError("cannot normalize zero mass");
    std::vector<double> m = mass_;
    for (double& v : m) v /= total_;
    return JointSubDistribution(size_a_, size_e_, std::move(m));
}

std::size_t JointSubDistribution::default_cell_cap() {
    if (const char* env = std::getenv("PA_BOUNDS_CELL_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10'000'000;
}

JointSubDistribution JointSubDistribution::iid_power(unsigned n, std::size_t cell_cap) const {
    if (n == 0) throw DomainError("power requires n >= 1");
    if (cell_cap == 0) cell_cap = default_cell_cap();
    double cells = std::pow(static_cast<double>(size_a_) * static_cast<double>(size_e_),
                            static_cast<double>(n));
    if (cells > static_cast<double>(cell_cap))
        throw TooLarge("i.i.d. power exceeds the cell cap; use spectrum_power");

    std::size_t na = 1, ne = 1;
    for (unsigned i = 0; i < n; ++i) {
        na *= size_a_;
        ne *= size_e_;
    }
    std::vector<double> out(na * ne, 0.0);
    // index (a_0..a_{n-1}), (e_0..e_{n-1}) with symbol 0 as the lowest digit
    for (std::size_t a = 0; a < na; ++a) {
        std::size_t atmp = a;
        std::vector<std::size_t> adig(n);
        for (unsigned i = 0; i < n; ++i) {
            adig[i] = atmp % size_a_;
            atmp /= size_a_;
        }
        for (std::size_t e = 0; e < ne; ++e) {
            std::size_t etmp = e;
            double v = 1.0;
            for (unsigned i = 0; i < n; ++i) {
                v *= mass_[adig[i] * size_e_ + (etmp % size_e_)];
                etmp /= size_e_;
            }
            out[a * ne + e] = v;
        }
    }
    return JointSubDistribution(na, ne, std::move(out));
}

JointSubDistribution JointSubDistribution::pushforward(std::span<const int> f, std::size_t size_b) const {
    if (f.size() != size_a_) throw ShapeError("map must be total on A");
    std::vector<double> out(size_b * size_e_, 0.0);
    for (std::size_t a = 0; a < size_a_; ++a) {
        int b = f[a];
        if (b < 0 || static_cast<std::size_t>(b) >= size_b) throw ShapeError("map value outside B");
        for (std::size_t e = 0; e < size_e_; ++e)
            out[static_cast<std::size_t>(b) * size_e_ + e] += mass_[a * size_e_ + e];
    }
    return JointSubDistribution(size_b, size_e_, std::move(out));
}

std::vector<double> JointSubDistribution::uniform_mix(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// ---- Spectrum ----

Spectrum Spectrum::from_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.value < y.value; });
    Spectrum s;
    s.atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (a.weight <= 0.0) continue;
        if (!s.atoms_.empty() && a.value - s.atoms_.back().value <= kMergeTol)
            s.atoms_.back().weight += a.weight;
        else
            s.atoms_.push_back(a);
    }
    return s;
}

Spectrum Spectrum::single_letter(const JointSubDistribution& p, std::span<const double> q) {
    if (q.size() != p.size_e()) throw ShapeError("Q_E size mismatch");
    double qs = pairwise_sum(q);
    if (std::abs(qs - 1.0) > 1e-9) throw NotNormalized("Q_E must be normalized");
    std::vector<Atom> atoms;
    atoms.reserve(p.size_a() * p.size_e());
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double m = p.at(a, e);
            if (m <= 0.0) continue;
            if (q[e] <= 0.0) throw SupportMismatch("Q_E vanishes on the support of P_E");
            atoms.push_back({std::log(m) - std::log(q[e]), m});
        }
    return from_atoms(std::move(atoms));
}

Spectrum Spectrum::convolve(const Spectrum& other) const {
    std::vector<Atom> prod;
    prod.reserve(atoms_.size() * other.atoms_.size());
    for (const Atom& x : atoms_)
        for (const Atom& y : other.atoms_) prod.push_back({x.value + y.value, x.weight * y.weight});
    return from_atoms(std::move(prod));
}

Spectrum Spectrum::power(unsigned n, std::size_t atom_cap) const {
    if (n == 0) throw DomainError("power requires n >= 1");
    Spectrum acc = *this;
    for (unsigned i = 1; i < n; ++i) {
        if (acc.atoms_.size() * atoms_.size() > atom_cap)
            throw TooLarge("spectrum atom count exceeds the cap");
        acc = acc.convolve(*this);
    }
    return acc;
}

double Spectrum::total_weight() const {
    std::vector<double> w;
    w.reserve(atoms_.size());
    for (const Atom& a : atoms_) w.push_back(a.weight);
    return pairwise_sum(w);
}

std::vector<double> Spectrum::suffix_weights() const {
    std::vector<double> s(atoms_.size() + 1, 0.0);
    for (std::size_t i = atoms_.size(); i-- > 0;) s[i] = s[i + 1] + atoms_[i].weight;
    return s;
}

double Spectrum::tail(double r, bool strict) const {
    const double thr = -r;
    std::size_t lo = 0, hi = atoms_.size();
    while (lo < hi) {  // first index whose value passes the threshold
        std::size_t mid = (lo + hi) / 2;
        bool pass = strict ? atoms_[mid].value > thr : atoms_[mid].value >= thr;
        if (pass)
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<double> w;
    w.reserve(atoms_.size() - lo);
    for (std::size_t i = lo; i < atoms_.size(); ++i) w.push_back(atoms_[i].weight);
    return pairwise_sum(w);
}

Spectrum spectrum_power(const JointSubDistribution& p, std::span<const double> q, unsigned n) {
    return Spectrum::single_letter(p, q).power(n);
}

double tail_probability(const JointSubDistribution& p, std::span<const double> q, double r, bool strict) {
    return Spectrum::single_letter(p, q).tail(r, strict);
}

JointSubDistribution convolve_shift(const JointSubDistribution& p, const FieldSpec& spec, unsigned n,
                                    std::span<const double> p_w) {
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= spec.q();
    if (p.size_a() != qn) throw ShapeError("A is not indexed as F_q^n");
    if (p_w.size() != qn) throw ShapeError("shift distribution is not on F_q^n");

    const std::size_t ne = p.size_e();
    std::vector<double> out(p.size_a() * ne, 0.0);
    std::vector<unsigned> da(n), dw(n), dd(n);
    for (std::uint64_t a = 0; a < qn; ++a) {
        decode_vector(spec, n, a, da.data());
        for (std::uint64_t w = 0; w < qn; ++w) {
            if (p_w[w] <= 0.0) continue;
            decode_vector(spec, n, w, dw.data());
            for (unsigned j = 0; j < n; ++j) dd[j] = spec.sub(da[j], dw[j]);
            std::uint64_t src = encode_vector(spec, n, dd.data());
            for (std::size_t e = 0; e < ne; ++e)
                out[a * ne + e] += p_w[w] * p.at(static_cast<std::size_t>(src), e);
        }
    }
    return JointSubDistribution(p.size_a(), ne, std::move(out));
}

}  // namespace pa
