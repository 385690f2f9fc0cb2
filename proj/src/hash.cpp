#include "pa/hash.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pa/mathutil.hpp"

namespace pa {

std::uint64_t LinearHash::apply(std::uint64_t a_code) const {
    const unsigned q = spec->q();
    std::vector<unsigned> da(n);
    decode_vector(*spec, n, a_code, da.data());
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    for (unsigned i = 0; i < m; ++i) {
        unsigned acc = 0;
        for (unsigned j = 0; j < n; ++j) acc = spec->add(acc, spec->mul(entry(i, j), da[j]));
        out += place * acc;
        place *= q;
    }
    return out;
}

std::vector<int> LinearHash::map_table() const {
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= spec->q();
    std::vector<int> f(qn);
    for (std::uint64_t a = 0; a < qn; ++a) f[a] = static_cast<int>(apply(a));
    return f;
}

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::full_random: return "full_random";
        case FamilyKind::toeplitz: return "toeplitz";
        case FamilyKind::modified_toeplitz: return "modified_toeplitz";
        case FamilyKind::custom: return "custom";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kMemberCap = 1ull << 24;

void check_seed_dist(const FieldSpec& spec, std::span<const double>& dist, std::vector<double>& storage) {
    if (dist.empty()) {
        storage.assign(spec.q(), 1.0 / spec.q());
        dist = storage;
        return;
    }
    if (dist.size() != spec.q()) throw ShapeError("seed distribution must live on F_q");
    double s = 0.0;
    for (double v : dist) {
        if (v < 0.0) throw DomainError("negative seed probability");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw NotNormalized("seed distribution must sum to one");
}

}  // namespace

HashFamily make_family(FamilyKind kind, const FieldSpec& spec, unsigned n, unsigned m,
                       std::span<const double> seed_symbol_dist) {
    if (m == 0 || n == 0 || m > n) throw DomainError("need 1 <= m <= n");
    std::vector<double> uniform_storage;
    check_seed_dist(spec, seed_symbol_dist, uniform_storage);

    unsigned seeds = 0;
    switch (kind) {
        case FamilyKind::full_random: seeds = m * n; break;
        case FamilyKind::toeplitz: seeds = n + m - 1; break;
        case FamilyKind::modified_toeplitz:
            if (m >= n) throw DomainError("modified Toeplitz needs m < n");
            seeds = n - 1;
            break;
        case FamilyKind::custom: throw DomainError("custom families use custom_family");
    }
    double count_d = std::pow(static_cast<double>(spec.q()), static_cast<double>(seeds));
    if (count_d > static_cast<double>(kMemberCap)) throw TooLarge("family enumeration cap exceeded");
    std::uint64_t count = static_cast<std::uint64_t>(count_d + 0.5);

    HashFamily fam;
    fam.spec = &spec;
    fam.n = n;
    fam.m = m;
    fam.kind = kind;
    fam.seed_symbol_dist.assign(seed_symbol_dist.begin(), seed_symbol_dist.end());
    fam.members.reserve(count);
    fam.probs.reserve(count);

    std::vector<unsigned> seed(seeds, 0);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t c = code;
        for (unsigned i = 0; i < seeds; ++i) {
            seed[i] = static_cast<unsigned>(c % spec.q());
            c /= spec.q();
        }
        LinearHash h;
        h.spec = &spec;
        h.n = n;
        h.m = m;
        h.mat.assign(static_cast<std::size_t>(m) * n, 0);
        switch (kind) {
            case FamilyKind::full_random:
                for (unsigned i = 0; i < m * n; ++i) h.mat[i] = seed[i];
                break;
            case FamilyKind::toeplitz:
                for (unsigned i = 0; i < m; ++i)
                    for (unsigned j = 0; j < n; ++j) h.mat[i * n + j] = seed[i - j + (n - 1)];
                break;
            case FamilyKind::modified_toeplitz: {
                const unsigned cols = n - m;
                for (unsigned i = 0; i < m; ++i) {
                    for (unsigned j = 0; j < cols; ++j) h.mat[i * n + j] = seed[i - j + (cols - 1)];
                    h.mat[i * n + cols + i] = 1;
                }
                break;
            }
            case FamilyKind::custom: break;
        }
        double prob = 1.0;
        for (unsigned i = 0; i < seeds; ++i) prob *= seed_symbol_dist[seed[i]];
        fam.members.push_back(std::move(h));
        fam.probs.push_back(prob);
    }
    return fam;
}

HashFamily custom_family(const FieldSpec& spec, unsigned n, unsigned m,
                         std::vector<LinearHash> members, std::vector<double> probs) {
    if (members.empty() || members.size() != probs.size()) throw ShapeError("members/probs mismatch");
    double s = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw DomainError("negative member probability");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-12) throw NotNormalized("member probabilities must sum to one");
    for (const LinearHash& h : members)
        if (h.spec != &spec || h.n != n || h.m != m) throw SpecMismatch("member shape mismatch");
    HashFamily fam;
    fam.spec = &spec;
    fam.n = n;
    fam.m = m;
    fam.kind = FamilyKind::custom;
    fam.members = std::move(members);
    fam.probs = std::move(probs);
    return fam;
}

// ---- linear algebra ----

namespace {

// RREF of a list of row vectors over F_q; returns nonzero rows.
std::vector<std::vector<unsigned>> rref(const FieldSpec& spec, std::vector<std::vector<unsigned>> rows,
                                        unsigned n) {
    std::size_t r = 0;
    for (unsigned col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        unsigned inv = spec.inv(rows[r][col]);
        for (unsigned j = 0; j < n; ++j) rows[r][j] = spec.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            unsigned f = rows[i][col];
            for (unsigned j = 0; j < n; ++j)
                rows[i][j] = spec.sub(rows[i][j], spec.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<std::vector<unsigned>> matrix_rows(const LinearHash& h) {
    std::vector<std::vector<unsigned>> rows(h.m, std::vector<unsigned>(h.n));
    for (unsigned i = 0; i < h.m; ++i)
        for (unsigned j = 0; j < h.n; ++j) rows[i][j] = h.entry(i, j);
    return rows;
}

}  // namespace

std::vector<std::vector<unsigned>> row_space_basis(const LinearHash& h) {
    return rref(*h.spec, matrix_rows(h), h.n);
}

unsigned rank(const LinearHash& h) { return static_cast<unsigned>(row_space_basis(h).size()); }

std::vector<std::vector<unsigned>> kernel_basis(const LinearHash& h) {
    const FieldSpec& spec = *h.spec;
    auto basis = rref(spec, matrix_rows(h), h.n);
    std::vector<int> pivot_of_col(h.n, -1);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        unsigned col = 0;
        while (col < h.n && basis[r][col] == 0) ++col;
        pivot_of_col[col] = static_cast<int>(r);
    }
    std::vector<std::vector<unsigned>> ker;
    for (unsigned free_col = 0; free_col < h.n; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<unsigned> v(h.n, 0);
        v[free_col] = 1;
        for (unsigned col = 0; col < h.n; ++col) {
            int r = pivot_of_col[col];
            if (r < 0) continue;
            v[col] = spec.neg(basis[static_cast<std::size_t>(r)][free_col]);
        }
        ker.push_back(std::move(v));
    }
    return ker;
}

bool in_span(const FieldSpec& spec, unsigned n, std::span<const std::vector<unsigned>> rref_basis,
             std::uint64_t code) {
    std::vector<unsigned> v(n);
    decode_vector(spec, n, code, v.data());
    for (const auto& row : rref_basis) {
        unsigned col = 0;
        while (col < n && row[col] == 0) ++col;
        if (col == n) continue;
        unsigned c = v[col];
        if (c == 0) continue;
        for (unsigned j = 0; j < n; ++j) v[j] = spec.sub(v[j], spec.mul(c, row[j]));
    }
    for (unsigned j = 0; j < n; ++j)
        if (v[j]) return false;
    return true;
}

std::vector<std::uint64_t> span_elements(const FieldSpec& spec, unsigned n,
                                         std::span<const std::vector<unsigned>> basis) {
    std::vector<std::uint64_t> out;
    const unsigned q = spec.q();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) combos *= q;
    out.reserve(combos);
    std::vector<unsigned> v(n);
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::fill(v.begin(), v.end(), 0u);
        std::uint64_t c = code;
        for (const auto& row : basis) {
            unsigned coef = static_cast<unsigned>(c % q);
            c /= q;
            if (coef)
                for (unsigned j = 0; j < n; ++j) v[j] = spec.add(v[j], spec.mul(coef, row[j]));
        }
        out.push_back(encode_vector(spec, n, v.data()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- universality ----

double universality_epsilon(const HashFamily& fam) {
    const FieldSpec& spec = *fam.spec;
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < fam.n; ++i) qn *= spec.q();
    if (qn > (1ull << 22)) throw TooLarge("domain enumeration cap exceeded");
    double qm = std::pow(static_cast<double>(spec.q()), static_cast<double>(fam.m));

    double worst = 0.0;
    for (std::uint64_t d = 1; d < qn; ++d) {
        double pr = 0.0;
        for (std::size_t i = 0; i < fam.members.size(); ++i)
            if (fam.members[i].apply(d) == 0) pr += fam.probs[i];
        worst = std::max(worst, pr);
    }
    return qm * worst;
}

DualUniversality dual_universality(const HashFamily& fam) {
    const FieldSpec& spec = *fam.spec;
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < fam.n; ++i) qn *= spec.q();
    if (qn > (1ull << 22)) throw TooLarge("domain enumeration cap exceeded");

    std::vector<std::vector<std::vector<unsigned>>> bases;
    bases.reserve(fam.members.size());
    unsigned t_min = fam.n, t_max = 0;
    double surj = 0.0;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        auto b = row_space_basis(fam.members[i]);
        unsigned rk = static_cast<unsigned>(b.size());
        t_min = std::min(t_min, fam.n - rk);
        t_max = std::max(t_max, fam.n - rk);
        if (rk == fam.m) surj += fam.probs[i];
        bases.push_back(std::move(b));
    }
    double worst = 0.0;
    for (std::uint64_t x = 1; x < qn; ++x) {
        double pr = 0.0;
        for (std::size_t i = 0; i < fam.members.size(); ++i)
            if (in_span(spec, fam.n, bases[i], x)) pr += fam.probs[i];
        worst = std::max(worst, pr);
    }
    double qd = static_cast<double>(spec.q());
    double qnm = std::pow(qd, static_cast<double>(fam.n - fam.m));
    surj = std::min(surj, 1.0);
    return {qnm * worst, std::pow(qd, static_cast<double>(t_max)) * worst, t_min, t_max, surj};
}

HashFamily surjective_restriction(const HashFamily& fam) {
    std::vector<LinearHash> members;
    std::vector<double> probs;
    for (std::size_t i = 0; i < fam.members.size(); ++i)
        if (rank(fam.members[i]) == fam.m) {
            members.push_back(fam.members[i]);
            probs.push_back(fam.probs[i]);
        }
    if (members.empty()) throw DomainError("no surjective member");
    double z = 0.0;
    for (double p : probs) z += p;
    for (double& p : probs) p /= z;
    return custom_family(*fam.spec, fam.n, fam.m, std::move(members), std::move(probs));
}

double dual_universality_epsilon(const HashFamily& fam) { return dual_universality(fam).epsilon; }

ShiftEnsemble kernel_code_ensemble(const HashFamily& fam) {
    const FieldSpec& spec = *fam.spec;
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < fam.n; ++i) qn *= spec.q();
    ShiftEnsemble ens;
    ens.spec = &spec;
    ens.n = fam.n;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        auto ker = kernel_basis(fam.members[i]);
        auto elems = span_elements(spec, fam.n, ker);
        std::vector<double> dist(qn, 0.0);
        for (std::uint64_t e : elems) dist[e] = 1.0 / static_cast<double>(elems.size());
        ens.dists.push_back(std::move(dist));
        ens.probs.push_back(fam.probs[i]);
    }
    return ens;
}

double delta_bias(const ShiftEnsemble& ens) {
    const FieldSpec& spec = *ens.spec;
    const unsigned p = spec.p();
    std::uint64_t qn = 1;
    for (unsigned i = 0; i < ens.n; ++i) qn *= spec.q();
    if (qn > (1ull << 22)) throw TooLarge("domain enumeration cap exceeded");

    std::vector<double> cosv(p), sinv(p);
    for (unsigned j = 0; j < p; ++j) {
        cosv[j] = std::cos(2.0 * M_PI * j / p);
        sinv[j] = std::sin(2.0 * M_PI * j / p);
    }

    double worst = 0.0;
    std::vector<double> residue(p);
    for (std::uint64_t x = 1; x < qn; ++x) {
        double mean_sq = 0.0;
        for (std::size_t i = 0; i < ens.dists.size(); ++i) {
            std::fill(residue.begin(), residue.end(), 0.0);
            const auto& dist = ens.dists[i];
            for (std::uint64_t w = 0; w < qn; ++w) {
                if (dist[w] <= 0.0) continue;
                residue[pairing_indexed(spec, ens.n, x, w)] += dist[w];
            }
            // snap the exact code cases: equal residues sum to 0, a single
            // residue class gives modulus 1
            double total = 0.0, maxr = 0.0;
            unsigned nonzero = 0;
            for (unsigned j = 0; j < p; ++j) {
                total += residue[j];
                maxr = std::max(maxr, residue[j]);
                if (residue[j] > 0.0) ++nonzero;
            }
            double sq;
            if (nonzero == 1) {
                sq = maxr * maxr;
            } else {
                bool all_equal = true;
                for (unsigned j = 0; j < p; ++j)
                    if (std::abs(residue[j] - total / p) > 1e-15) all_equal = false;
                if (all_equal) {
                    sq = 0.0;
                } else {
                    double re = 0.0, im = 0.0;
                    for (unsigned j = 0; j < p; ++j) {
                        re += residue[j] * cosv[j];
                        im += residue[j] * sinv[j];
                    }
                    sq = re * re + im * im;
                }
            }
            mean_sq += ens.probs[i] * sq;
        }
        worst = std::max(worst, mean_sq);
    }
    return std::sqrt(worst);
}

ConversionEpsilon conversion_epsilon(double eps, unsigned n, unsigned m, unsigned q) {
    double qd = q;
    double qm = std::pow(qd, static_cast<double>(m));
    double qnm = std::pow(qd, static_cast<double>(n) - static_cast<double>(m));
    return {qd * (1.0 - qm * eps) + (eps - 1.0) * qnm,
            qd * (1.0 - eps / qm) + (eps - 1.0) * qnm};
}

NonuniformSeedBound nonuniform_seed_epsilon(const HashFamily& fam) {
    if (fam.kind != FamilyKind::modified_toeplitz)
        throw DomainError("seed bound applies to modified Toeplitz families");
    std::vector<double> dist = fam.seed_symbol_dist;
    if (dist.empty()) dist.assign(fam.spec->q(), 1.0 / fam.spec->q());
    double pmax = *std::max_element(dist.begin(), dist.end());
    // i.i.d. symbols: H_min of the seed vector is (n-1) times the symbol value
    double hmin = static_cast<double>(fam.n - 1) * (-std::log(pmax));
    double bound = std::pow(static_cast<double>(fam.spec->q()), static_cast<double>(fam.n - 1)) *
                   std::exp(-hmin);
    double enumerated = dual_universality(fam).epsilon;
    return {bound, enumerated, enumerated <= bound + 1e-9};
}

FamilyAudit audit_family(const HashFamily& fam) {
    DualUniversality du = dual_universality(fam);
    FamilyAudit a;
    a.kind = to_string(fam.kind);
    a.q = fam.spec->q();
    a.n = fam.n;
    a.m = fam.m;
    a.member_count = fam.members.size();
    a.epsilon_universal = universality_epsilon(fam);
    a.epsilon_dual = du.epsilon;
    a.epsilon_dual_effective = du.epsilon_effective;
    a.delta_bias = delta_bias(kernel_code_ensemble(fam));
    a.t_min = du.t_min;
    a.t_max = du.t_max;
    a.surjective_fraction = du.surjective_fraction;
    return a;
}

}  // namespace pa
