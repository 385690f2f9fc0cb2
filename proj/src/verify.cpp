#include "pa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "pa/asymptotic.hpp"
#include "pa/bounds.hpp"
#include "pa/entropy.hpp"
#include "pa/field.hpp"
#include "pa/hash.hpp"

namespace pa::verify {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Suite {
    SuiteReport report;

    void add(const std::string& id, const std::string& desc, const std::string& kind, bool ok,
             const std::string& detail = "") {
        report.cases.push_back({id, desc, kind, ok, detail});
        if (ok)
            ++report.passed;
        else
            ++report.failed;
    }
    void leq(const std::string& id, const std::string& desc, double lhs, double rhs,
             double slack = 1e-9) {
        bool ok = lhs <= rhs + slack;
        add(id, desc, "inequality", ok,
            ok ? "" : "lhs=" + fmt_double(lhs) + " rhs=" + fmt_double(rhs));
    }
    void close(const std::string& id, const std::string& desc, double a, double b, double tol) {
        bool ok = std::abs(a - b) <= tol;
        add(id, desc, "equality", ok, ok ? "" : "a=" + fmt_double(a) + " b=" + fmt_double(b));
    }
};

}  // namespace

JointSubDistribution random_joint(Rng& rng, std::size_t na, std::size_t ne, bool normalized,
                                  bool strictly_positive) {
    std::vector<double> m(na * ne);
    for (double& v : m) v = std::exp(2.0 * rng.uniform() - 1.0);
    if (!strictly_positive)
        for (double& v : m)
            if (rng.uniform() < 0.2) v = 0.0;
    double s = pairwise_sum(m);
    if (s <= 0.0) m[0] = s = 1.0;
    double scale = normalized ? 1.0 / s : (0.3 + 0.6 * rng.uniform()) / s;
    for (double& v : m) v *= scale;
    return JointSubDistribution(na, ne, std::move(m));
}

JointSubDistribution uniform_conditional_fixture(Rng& rng, std::size_t na, std::size_t ne) {
    std::vector<double> pe(ne);
    for (double& v : pe) v = 0.2 + rng.uniform();
    double s = pairwise_sum(pe);
    std::vector<double> m(na * ne);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t e = 0; e < ne; ++e) m[a * ne + e] = pe[e] / s / static_cast<double>(na);
    return JointSubDistribution(na, ne, std::move(m));
}

double grid_oracle_max_q_h2(const JointSubDistribution& p, double s, int resolution) {
    const std::size_t ne = p.size_e();
    auto value = [&](const std::vector<double>& q) { return cond_renyi_rel(p, q, s); };

    if (ne == 1) return value({1.0});
    double best = -kInf;
    std::vector<double> argbest;
    auto consider = [&](std::vector<double> q) {
        double v = value(q);
        if (v > best) {
            best = v;
            argbest = std::move(q);
        }
    };
    if (ne == 2) {
        for (int i = 0; i <= resolution; ++i) {
            double x = static_cast<double>(i) / resolution;
            consider({x, 1.0 - x});
        }
        // one refinement pass around the coarse winner
        double x0 = argbest[0];
        double w = 1.0 / resolution;
        for (int i = 0; i <= 200; ++i) {
            double x = std::clamp(x0 - w + 2.0 * w * i / 200.0, 0.0, 1.0);
            consider({x, 1.0 - x});
        }
        return best;
    }
    if (ne == 3) {
        int res = static_cast<int>(std::sqrt(static_cast<double>(resolution))) + 1;
        for (int i = 0; i <= res; ++i)
            for (int j = 0; i + j <= res; ++j) {
                double x = static_cast<double>(i) / res;
                double y = static_cast<double>(j) / res;
                consider({x, y, 1.0 - x - y});
            }
        std::vector<double> c = argbest;
        double w = 1.0 / res;
        for (int i = -40; i <= 40; ++i)
            for (int j = -40; j <= 40; ++j) {
                double x = c[0] + w * i / 40.0;
                double y = c[1] + w * j / 40.0;
                if (x < 0.0 || y < 0.0 || x + y > 1.0) continue;
                consider({x, y, 1.0 - x - y});
            }
        return best;
    }
    throw ShapeError("grid oracle handles |E| <= 3");
}

double grid_oracle_smooth_min(const JointSubDistribution& p, std::span<const double> q, double r,
                              int resolution) {
    const double scale = std::exp(-r);
    std::vector<double> per_cell;
    for (std::size_t a = 0; a < p.size_a(); ++a)
        for (std::size_t e = 0; e < p.size_e(); ++e) {
            double cap = scale * q[e];
            double m = p.at(a, e);
            double bestc = kInf;
            for (int i = 0; i <= resolution; ++i) {
                double x = cap * static_cast<double>(i) / resolution;
                bestc = std::min(bestc, std::abs(m - x));
            }
            per_cell.push_back(bestc);
        }
    return pairwise_sum(per_cell);
}

double grid_oracle_simplex_exponent(const JointSubDistribution& p, double r_prime, int resolution) {
    return type_exponent_check(p, r_prime, static_cast<unsigned>(resolution)).lhs_grid;
}

// ---------------------------------------------------------------------------
// suite body
// ---------------------------------------------------------------------------

namespace {

void field_cases(Suite& s) {
    // pairing bilinearity and non-degeneracy, exhaustive on small fields
    for (auto [pp, kk] : {std::pair<unsigned, unsigned>{2, 1}, {2, 2}, {3, 1}, {2, 3}, {5, 1},
                          {3, 2}, {2, 4}}) {
        const FieldSpec& f = FieldSpec::get(pp, kk);
        for (unsigned n = 1; n <= 3; ++n) {
            std::uint64_t qn = 1;
            for (unsigned i = 0; i < n; ++i) qn *= f.q();
            if (qn > 4096) continue;
            bool nondeg = true;
            for (std::uint64_t x = 1; x < qn && nondeg; ++x) {
                bool hit = false;
                for (std::uint64_t y = 1; y < qn && !hit; ++y)
                    if (pairing_indexed(f, n, x, y) != 0) hit = true;
                nondeg = hit;
            }
            s.add("field/nondegenerate/q" + std::to_string(f.q()) + "/n" + std::to_string(n),
                  "every nonzero x pairs nontrivially with some y", "inequality", nondeg);
        }
        // additivity in the first slot on all pairs over F_q^2 (small q only)
        if (f.q() <= 9) {
            bool additive = true;
            for (std::uint64_t x = 0; x < f.q() * f.q() && additive; ++x)
                for (std::uint64_t xp = 0; xp < f.q() * f.q() && additive; ++xp)
                    for (std::uint64_t y = 0; y < f.q() * f.q() && additive; ++y) {
                        unsigned d1[2], d2[2], dsum[2];
                        decode_vector(f, 2, x, d1);
                        decode_vector(f, 2, xp, d2);
                        for (int j = 0; j < 2; ++j) dsum[j] = f.add(d1[j], d2[j]);
                        unsigned lhsv = pairing_indexed(f, 2, encode_vector(f, 2, dsum), y);
                        unsigned rhsv =
                            (pairing_indexed(f, 2, x, y) + pairing_indexed(f, 2, xp, y)) % f.p();
                        if (lhsv != rhsv) additive = false;
                    }
            s.add("field/bilinear/q" + std::to_string(f.q()),
                  "pairing is additive in its first argument", "equality", additive);
        }
    }

    // character orthogonality against every subspace of F_q^n, q in {2,3,4}
    for (unsigned qsel = 0; qsel < 3; ++qsel) {
        const FieldSpec& f = qsel == 0 ? FieldSpec::get(2, 1)
                            : qsel == 1 ? FieldSpec::get(3, 1)
                                        : FieldSpec::get(2, 2);
        for (unsigned n = 1; n <= 3; ++n) {
            std::uint64_t qn = 1;
            for (unsigned i = 0; i < n; ++i) qn *= f.q();
            if (qn > 64) continue;
            // all subspaces as deduplicated spans of vector triples
            std::set<std::uint64_t> seen;  // membership bitmask
            std::vector<std::vector<std::uint64_t>> subspaces;
            std::vector<std::vector<unsigned>> gens;
            std::vector<unsigned> dig(n);
            for (std::uint64_t v1 = 0; v1 < qn; ++v1)
                for (std::uint64_t v2 = v1; v2 < qn; ++v2)
                    for (std::uint64_t v3 = v2; v3 < qn; ++v3) {
                        gens.clear();
                        for (std::uint64_t v : {v1, v2, v3}) {
                            decode_vector(f, n, v, dig.data());
                            gens.push_back(dig);
                        }
                        auto elems = span_elements(f, n, gens);
                        std::uint64_t mask = 0;
                        for (std::uint64_t e : elems) mask |= 1ull << e;
                        if (seen.insert(mask).second) subspaces.push_back(elems);
                    }
            bool ok = true;
            for (const auto& sub : subspaces) {
                for (std::uint64_t x = 0; x < qn && ok; ++x) {
                    double re = 0.0, im = 0.0;
                    bool in_perp = true;
                    for (std::uint64_t w : sub) {
                        unsigned ph = pairing_indexed(f, n, x, w);
                        re += std::cos(2.0 * M_PI * ph / f.p());
                        im += std::sin(2.0 * M_PI * ph / f.p());
                        if (ph != 0) in_perp = false;
                    }
                    double expect = in_perp ? static_cast<double>(sub.size()) : 0.0;
                    if (std::abs(re - expect) > 1e-9 || std::abs(im) > 1e-9) ok = false;
                }
                if (!ok) break;
            }
            s.add("field/char_orthogonality/q" + std::to_string(f.q()) + "/n" + std::to_string(n),
                  "character sum over a subspace is |C| on the dual and 0 off it", "equality", ok,
                  std::to_string(subspaces.size()) + " subspaces");
        }
    }
}

void dist_cases(Suite& s, Rng& rng, int count) {
    for (int it = 0; it < std::max(4, count / 10); ++it) {
        JointSubDistribution p = random_joint(rng, 2 + rng.below(3), 2, rng.uniform() < 0.5);
        // pushforward conserves mass
        std::vector<int> f(p.size_a());
        for (std::size_t a = 0; a < f.size(); ++a) f[a] = static_cast<int>(rng.below(2));
        JointSubDistribution out = p.pushforward(f, 2);
        s.close("dist/pushforward_mass/" + std::to_string(it), "pushforward conserves mass",
                out.total_mass(), p.total_mass(), 1e-12);
    }
    // spectrum tail equals the direct product-scan tail
    for (int it = 0; it < 6; ++it) {
        std::size_t na = it % 2 == 0 ? 2 : 3;
        JointSubDistribution p = random_joint(rng, na, 2, true);
        std::vector<double> q = p.marginal_e_normalized();
        for (unsigned n = 1; n <= 4; ++n) {
            JointSubDistribution pn = p.iid_power(n);
            Spectrum sp = spectrum_power(p, q, n);
            std::vector<double> qn(pn.size_e(), 1.0);
            for (std::size_t e = 0; e < pn.size_e(); ++e) {
                std::size_t tmp = e;
                for (unsigned i = 0; i < n; ++i) {
                    qn[e] *= q[tmp % p.size_e()];
                    tmp /= p.size_e();
                }
            }
            double r = 0.3 + 1.3 * rng.uniform();
            double direct = 0.0;
            for (std::size_t a = 0; a < pn.size_a(); ++a)
                for (std::size_t e = 0; e < pn.size_e(); ++e) {
                    double m = pn.at(a, e);
                    if (m > 0.0 && std::log(m) - std::log(qn[e]) > -r) direct += m;
                }
            s.close("dist/spectrum_vs_product/" + std::to_string(it) + "/n" + std::to_string(n),
                    "spectrum tail equals i.i.d. product scan", sp.tail(r, true), direct, 1e-10);
        }
    }
    // tail monotone in R, and the >= variant dominates the > variant
    {
        JointSubDistribution p = random_joint(rng, 3, 3, true);
        std::vector<double> q = p.marginal_e_normalized();
        Spectrum sp = Spectrum::single_letter(p, q);
        bool mono = true, dom = true;
        double prev = -1.0;
        for (int i = 0; i <= 50; ++i) {
            double r = -3.0 + 6.0 * i / 50.0;
            double t = sp.tail(r, true);
            if (t + 1e-12 < prev) mono = false;
            if (sp.tail(r, false) + 1e-12 < t) dom = false;
            prev = t;
        }
        s.add("dist/tail_monotone", "tail is non-decreasing in R", "trend", mono);
        s.add("dist/tail_strictness", "weak tail dominates strict tail", "inequality", dom);
    }
    // convolution preserves the E marginal
    {
        const FieldSpec& f2 = FieldSpec::get(2, 1);
        JointSubDistribution p = random_joint(rng, 4, 2, true);
        std::vector<double> w = {0.5, 0.25, 0.125, 0.125};
        JointSubDistribution c = convolve_shift(p, f2, 2, w);
        auto me0 = p.marginal_e(), me1 = c.marginal_e();
        bool ok = true;
        for (std::size_t e = 0; e < me0.size(); ++e)
            if (std::abs(me0[e] - me1[e]) > 1e-12) ok = false;
        s.add("dist/convolve_marginal", "shift convolution preserves the E marginal", "equality", ok);
    }
}

void entropy_cases(Suite& s, Rng& rng, int count) {
    const int reps = std::max(6, count / 8);
    for (int it = 0; it < reps; ++it) {
        JointSubDistribution p = random_joint(rng, 2 + rng.below(2), 2 + rng.below(2), true);
        std::vector<double> q = p.marginal_e_normalized();

        // monotone decreasing in the order
        bool mono_down = true, mono_up = true;
        double prev_d = kInf, prev_u = kInf;
        for (double sv : {-0.9, -0.5, -0.2, 0.2, 0.5, 1.0, 2.0, 3.5, 5.0}) {
            double hd = cond_renyi_down(p, sv);
            double hu = cond_renyi_up(p, sv);
            if (hd > prev_d + 1e-10) mono_down = false;
            if (hu > prev_u + 1e-10) mono_up = false;
            prev_d = hd;
            prev_u = hu;
        }
        s.add("entropy/monotone_down/" + std::to_string(it), "down entropy decreases in s", "trend",
              mono_down);
        s.add("entropy/monotone_up/" + std::to_string(it), "up entropy decreases in s", "trend",
              mono_up);

        // sandwich around Shannon for normalized inputs
        double h = cond_renyi_rel(p, q, 0.0);
        for (double sv : {0.25, 0.5, 1.0}) {
            s.leq("entropy/sandwich_hi/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "H_{1+s} <= H", cond_renyi_rel(p, q, sv), h);
            s.leq("entropy/sandwich_lo/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "H <= H_{1-s}", h, cond_renyi_rel(p, q, -sv));
        }

        // duality between the two variants
        for (double sv : {0.25, 0.5, 0.75, 1.0}) {
            s.leq("entropy/duality/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "H_down_{1+s} >= H_up_{1/(1-s)}",
                  sv < 1.0 ? cond_renyi_up(p, sv / (1.0 - sv)) : cond_up_limit_min(p),
                  cond_renyi_down(p, sv));
        }

        // the up optimizer reproduces the closed form; grid Q never beats it
        for (double sv : {0.5, 1.0, 2.0}) {
            std::vector<double> qo = renyi_up_optimizer(p, sv);
            s.close("entropy/up_optimizer/" + std::to_string(it) + "/s" + fmt_double(sv),
                    "plugging the maximizer reproduces the up entropy",
                    cond_renyi_rel(p, qo, sv), cond_renyi_up(p, sv), 1e-12);
            bool dominated = true;
            for (int g = 0; g < 24; ++g) {
                std::vector<double> qq(p.size_e());
                for (double& v : qq) v = 0.05 + rng.uniform();
                double z = pairwise_sum(qq);
                for (double& v : qq) v /= z;
                if (cond_renyi_rel(p, qq, sv) > cond_renyi_up(p, sv) + 1e-12) dominated = false;
            }
            s.add("entropy/up_is_max/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "no sampled Q beats the closed form", "inequality", dominated);
        }

        // analytic derivatives against centered finite differences
        for (double sv : {0.3, 0.8, 1.6}) {
            const double step = 1e-5;
            auto shu = [&](double x) { return x * cond_renyi_up(p, x); };
            double fd = (shu(sv + step) - shu(sv - step)) / (2.0 * step);
            double an = d_s_h_up(p, sv);
            double rel = std::abs(fd - an) / std::max(1.0, std::abs(an));
            s.add("entropy/derivative/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "analytic derivative of s H_up matches finite differences", "equality",
                  rel <= 1e-6, "rel=" + fmt_double(rel));
            s.leq("entropy/concavity/" + std::to_string(it) + "/s" + fmt_double(sv),
                  "second derivative of s H_up is nonpositive", d2_s_h_up(p, sv), 0.0, 1e-10);
        }

        // Pinsker and Fannes-type relations
        double d1p = criterion_value(p, Criterion::d1prime);
        double ip = criterion_value(p, Criterion::Iprime);
        s.leq("entropy/pinsker/" + std::to_string(it), "d1'^2 <= 2 I'", d1p * d1p, 2.0 * ip);
        s.leq("entropy/fannes/" + std::to_string(it), "I' <= eta(d1', log|A|)", ip,
              eta(d1p, std::log(static_cast<double>(p.size_a()))));

        // data processing for deterministic maps
        std::vector<int> f(p.size_a());
        for (std::size_t a = 0; a < f.size(); ++a) f[a] = static_cast<int>(rng.below(2));
        s.leq("entropy/data_processing/" + std::to_string(it), "H(f(A)|E) <= H(A|E)",
              cond_shannon(p.pushforward(f, 2)), cond_shannon(p));

        // smoothing identity: optimizer distance equals the two-term tail formula
        double r = cond_min_rel(p, q) + 1.5 * rng.uniform();
        SmoothingMin sm = smoothing_distance_min(p, q, r);
        double t1 = 0.0, t2 = 0.0;
        for (std::size_t a = 0; a < p.size_a(); ++a)
            for (std::size_t e = 0; e < p.size_e(); ++e)
                if (p.at(a, e) > std::exp(-r) * q[e]) {
                    t1 += p.at(a, e);
                    t2 += std::exp(-r) * q[e];
                }
        s.close("entropy/smooth_formula/" + std::to_string(it),
                "capped-cell distance equals tail minus capped tail", sm.distance, t1 - t2, 1e-12);
        // two-sided tail sandwich with c = 2
        double c = 2.0;
        double lhs = 0.0;
        for (std::size_t a = 0; a < p.size_a(); ++a)
            for (std::size_t e = 0; e < p.size_e(); ++e)
                if (p.at(a, e) > c * std::exp(-r) * q[e]) lhs += p.at(a, e);
        s.leq("entropy/smooth_sandwich_lo/" + std::to_string(it), "c-form lower bound",
              (1.0 - 1.0 / c) * lhs, sm.distance, 1e-12);
        s.leq("entropy/smooth_sandwich_hi/" + std::to_string(it), "tail upper bound", sm.distance,
              t1, 1e-12);

        // smooth min entropy self-consistency
        double eps1 = 0.05 + 0.2 * rng.uniform();
        SmoothingResult sr = smooth_min_entropy(p, q, eps1);
        if (!sr.infinite) {
            s.close("entropy/smooth_min_consistency/" + std::to_string(it),
                    "achieved distance matches the request", sr.epsilon1, eps1, 1e-8);
            s.leq("entropy/smooth_min_feasible/" + std::to_string(it),
                  "optimizer meets the min-entropy constraint", sr.r,
                  cond_min_rel(*sr.smoothed, q) + 1e-9);
        }

        // information-spectrum smoothing obeys its two defining estimates
        for (double mm : {2.0, 4.0}) {
            SmoothH2 t = smooth_h2_info_spectrum(p, mm);
            bool ok = true;
            for (double sv = 0.0; sv <= 1.0; sv += 0.1) {
                double hd = sv == 0.0 ? cond_shannon(p) : cond_renyi_down(p, sv);
                if (std::exp(-t.h2) > std::exp(-sv * hd) * std::pow(mm, -(1.0 - sv)) + 1e-12)
                    ok = false;
                if (t.epsilon1 > std::pow(mm, sv) * std::exp(-sv * hd) + 1e-12) ok = false;
            }
            s.add("entropy/info_spectrum_h2/" + std::to_string(it) + "/M" + fmt_double(mm),
                  "truncation cost and collision mass are exponentially controlled", "inequality",
                  ok);
        }
    }

    // uniform-conditional fixtures: all entropies flat, duality tight
    for (int it = 0; it < 4; ++it) {
        JointSubDistribution u = uniform_conditional_fixture(rng, 2 + rng.below(3), 2 + rng.below(2));
        double h = cond_shannon(u);
        bool flat = true;
        for (double sv : {-0.5, 0.5, 1.0, 3.0})
            if (std::abs(cond_renyi_down(u, sv) - h) > 1e-10 ||
                std::abs(cond_renyi_up(u, sv) - h) > 1e-10)
                flat = false;
        s.add("entropy/uniform_flat/" + std::to_string(it),
              "uniform conditionals make every order coincide", "equality", flat);
        s.close("entropy/duality_tight/" + std::to_string(it),
                "duality is an equality for uniform conditionals", cond_renyi_down(u, 0.5),
                cond_renyi_up(u, 1.0), 1e-10);
    }

    // limits in the order parameter; the min-entropy gap decays like
    // log(#cells)/s, so s = 5e3 guarantees the 1e-3 window for these sizes
    {
        JointSubDistribution p = random_joint(rng, 3, 2, true);
        s.close("entropy/limit_shannon", "up entropy approaches Shannon as s -> 0",
                cond_renyi_up(p, 1e-6), cond_shannon(p), 1e-4);
        s.close("entropy/limit_min", "down entropy approaches min entropy as s grows",
                cond_renyi_down(p, 5e3), cond_min_down(p), 1e-3);
        std::vector<double> q = p.marginal_e_normalized();
        s.close("entropy/limit_min_rel", "relative entropy approaches relative min entropy",
                cond_renyi_rel(p, q, 5e3), cond_min_rel(p, q), 1e-3);
    }

    // Gallager reparameterization
    {
        JointSubDistribution p = random_joint(rng, 3, 3, true);
        for (double u : {0.4, 1.0, 2.5}) {
            double lhs = cond_renyi_up(p, u);
            double rhs = -(1.0 + u) / u * gallager_phi(p, u / (1.0 + u));
            s.close("entropy/gallager/u" + fmt_double(u),
                    "up entropy equals the Gallager reparameterization", lhs, rhs, 1e-12);
        }
    }

    // axioms of the modified mutual information on product alphabets
    {
        // (A,B) x E with |A| = |B| = |E| = 2; A-major pair index a*2+b
        JointSubDistribution pab = random_joint(rng, 4, 2, true);
        double i_ab = criterion_value(pab, Criterion::Iprime);
        std::vector<int> to_b(4);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) to_b[a * 2 + b] = b;
        JointSubDistribution pb = pab.pushforward(to_b, 2);
        double i_b = criterion_value(pb, Criterion::Iprime);
        // I'(A | B,E): regard (B,E) as the side information
        std::vector<double> mbe(2 * 4, 0.0);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int e = 0; e < 2; ++e) mbe[a * 4 + (b * 2 + e)] = pab.at(a * 2 + b, e);
        JointSubDistribution pa_be(2, 4, std::move(mbe));
        double i_a_be = criterion_value(pa_be, Criterion::Iprime);
        s.close("entropy/axiom_chain", "chain rule of the modified mutual information", i_ab,
                i_b + i_a_be, 1e-10);

        // linearity under disjoint E supports
        JointSubDistribution p1 = random_joint(rng, 2, 2, true);
        JointSubDistribution p2 = random_joint(rng, 2, 2, true);
        double lambda = 0.3 + 0.4 * rng.uniform();
        std::vector<double> mix(2 * 4, 0.0);
        for (int a = 0; a < 2; ++a)
            for (int e = 0; e < 2; ++e) {
                mix[a * 4 + e] = lambda * p1.at(a, e);
                mix[a * 4 + 2 + e] = (1.0 - lambda) * p2.at(a, e);
            }
        JointSubDistribution pmix(2, 4, std::move(mix));
        s.close("entropy/axiom_linearity", "linearity on disjoint E mixtures",
                criterion_value(pmix, Criterion::Iprime),
                lambda * criterion_value(p1, Criterion::Iprime) +
                    (1.0 - lambda) * criterion_value(p2, Criterion::Iprime),
                1e-10);

        // range, ideal case, normalization
        JointSubDistribution pr = random_joint(rng, 3, 2, true);
        double ipr = criterion_value(pr, Criterion::Iprime);
        s.add("entropy/axiom_range", "0 <= I' <= log|A|", "inequality",
              ipr >= -1e-12 && ipr <= std::log(3.0) + 1e-12);
        JointSubDistribution ideal = uniform_conditional_fixture(rng, 3, 2);
        s.close("entropy/axiom_ideal", "ideal product has zero leakage",
                criterion_value(ideal, Criterion::Iprime), 0.0, 1e-12);
        std::vector<double> point(3 * 2, 0.0);
        point[0 * 2 + 0] = 0.6;
        point[0 * 2 + 1] = 0.4;
        JointSubDistribution pnt(3, 2, std::move(point));
        s.close("entropy/axiom_normalization", "a deterministic A has full leakage",
                criterion_value(pnt, Criterion::Iprime), std::log(3.0), 1e-12);

        // the L1 criterion fails the chain rule on a fixed witness
        JointSubDistribution w(2, 2, {0.5, 0.1, 0.1, 0.3});  // (A,B), E trivial inside
        double d_ab;
        {
            std::vector<double> m4(4 * 1);
            m4[0] = 0.5; m4[1] = 0.1; m4[2] = 0.1; m4[3] = 0.3;
            JointSubDistribution pab1(4, 1, std::move(m4));
            d_ab = criterion_value(pab1, Criterion::d1prime);
        }
        std::vector<int> tob = {0, 1, 0, 1};
        std::vector<double> m41(4 * 1);
        m41[0] = 0.5; m41[1] = 0.1; m41[2] = 0.1; m41[3] = 0.3;
        JointSubDistribution pab1(4, 1, std::move(m41));
        double d_b = criterion_value(pab1.pushforward(tob, 2), Criterion::d1prime);
        double d_a_b = criterion_value(w, Criterion::d1prime);  // (B) as side information
        s.add("entropy/d1_chain_violation",
              "the L1 distinguishability violates the chain rule on the fixture", "inequality",
              std::abs(d_ab - (d_b + d_a_b)) > 1e-3,
              "lhs=" + fmt_double(d_ab) + " rhs=" + fmt_double(d_b + d_a_b));
    }
}

void hash_cases(Suite& s, Rng& rng) {
    // rank-nullity and rowspace = kernel-perp, exhaustive per matrix
    for (auto [pp, kk] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = FieldSpec::get(pp, kk);
        for (unsigned n = 1; n <= 4; ++n) {
            std::uint64_t qn = 1;
            for (unsigned i = 0; i < n; ++i) qn *= f.q();
            if (qn > 256) continue;
            bool ok = true;
            for (int trial = 0; trial < 20 && ok; ++trial) {
                unsigned m = 1 + static_cast<unsigned>(rng.below(n));
                LinearHash h;
                h.spec = &f;
                h.n = n;
                h.m = m;
                h.mat.resize(static_cast<std::size_t>(m) * n);
                for (auto& v : h.mat) v = static_cast<unsigned>(rng.below(f.q()));
                auto rs = row_space_basis(h);
                auto kb = kernel_basis(h);
                if (rs.size() + kb.size() != n) ok = false;
                auto ker_elems = span_elements(f, n, kb);
                for (std::uint64_t x = 0; x < qn && ok; ++x) {
                    bool perp_all = true;
                    for (std::uint64_t w : ker_elems)
                        if (pairing_indexed(f, n, x, w) != 0) perp_all = false;
                    if (perp_all != in_span(f, n, rs, x)) ok = false;
                }
            }
            s.add("hash/duality/q" + std::to_string(f.q()) + "/n" + std::to_string(n),
                  "rowspace is the pairing-dual of the kernel", "equality", ok);
        }
    }

    const FieldSpec& f2 = FieldSpec::get(2, 1);
    // collision floor for every enumerable family
    for (auto kind : {FamilyKind::full_random, FamilyKind::toeplitz, FamilyKind::modified_toeplitz}) {
        for (unsigned n = 2; n <= 3; ++n)
            for (unsigned m = 1; m < n; ++m) {
                HashFamily fam = make_family(kind, f2, n, m);
                double eps = universality_epsilon(fam);
                double qa = std::pow(2.0, n), qb = std::pow(2.0, m);
                s.leq("hash/eps_floor/" + to_string(kind) + "/n" + std::to_string(n) + "m" +
                          std::to_string(m),
                      "collision parameter respects the universal floor", (qa - qb) / (qa - 1.0),
                      eps, 1e-12);
                // delta bias of the kernel ensemble is controlled by dual universality
                DualUniversality du = dual_universality(fam);
                double delta = delta_bias(kernel_code_ensemble(fam));
                s.leq("hash/lem_delta/" + to_string(kind) + "/n" + std::to_string(n) + "m" +
                          std::to_string(m),
                      "delta bias <= sqrt(eps q^{-t})", delta,
                      std::sqrt(du.epsilon * std::pow(2.0, -static_cast<double>(du.t_min))), 1e-9);
            }
    }

    // conversion formula: corrected reading dominates enumeration on random
    // surjective families; the verbatim reading fails at eps = 1
    {
        ConversionEpsilon ce = conversion_epsilon(1.0, 3, 1, 2);
        s.leq("hash/conversion_verbatim_flagged", "verbatim reading is nonpositive at eps=1",
              ce.verbatim, 0.0);
        bool ok = true;
        for (int trial = 0; trial < 50; ++trial) {
            unsigned n = 2 + static_cast<unsigned>(rng.below(3));
            unsigned m = 1 + static_cast<unsigned>(rng.below(n));
            std::vector<LinearHash> members;
            std::vector<double> probs;
            int count = 2 + static_cast<int>(rng.below(5));
            for (int i = 0; i < count; ++i) {
                LinearHash h;
                h.spec = &f2;
                h.n = n;
                h.m = m;
                h.mat.resize(static_cast<std::size_t>(m) * n);
                do {
                    for (auto& v : h.mat) v = static_cast<unsigned>(rng.below(2));
                } while (rank(h) != m);
                members.push_back(h);
                probs.push_back(1.0);
            }
            for (double& pv : probs) pv /= count;
            HashFamily fam = custom_family(f2, n, m, std::move(members), std::move(probs));
            double eps_u = universality_epsilon(fam);
            double eps_d = dual_universality(fam).epsilon;
            ConversionEpsilon conv = conversion_epsilon(eps_u, n, m, 2);
            if (eps_d > conv.corrected + 1e-9) {
                ok = false;
                break;
            }
        }
        s.add("hash/conversion_corrected", "corrected conversion dominates enumeration on random "
              "surjective families", "inequality", ok);
    }

    // non-uniform seeds
    {
        std::vector<double> seed_dist = {0.75, 0.25};
        HashFamily fam = make_family(FamilyKind::modified_toeplitz, f2, 2, 1, seed_dist);
        NonuniformSeedBound nb = nonuniform_seed_epsilon(fam);
        s.close("hash/nonuniform_value", "seed bound value", nb.bound, 1.5, 1e-12);
        s.add("hash/nonuniform_holds", "enumerated dual universality within the seed bound",
              "inequality", nb.holds);
    }
}

void bounds_cases(Suite& s, Rng& rng, int count, bool inject_fault) {
    const FieldSpec& f2 = FieldSpec::get(2, 1);
    struct Pair {
        HashFamily fam;
        JointSubDistribution p;
    };
    std::vector<Pair> corpus;
    for (unsigned n = 1; n <= 3; ++n) {
        // the hashing lemmas assume every kernel has dimension n - m, so
        // rank-deficient ensembles enter the corpus through their surjective
        // restriction (the mixed-rank originals are covered separately with
        // the effective epsilon)
        std::vector<HashFamily> fams;
        for (unsigned m = 1; m <= n; ++m) {
            fams.push_back(surjective_restriction(make_family(FamilyKind::full_random, f2, n, m)));
            fams.push_back(surjective_restriction(make_family(FamilyKind::toeplitz, f2, n, m)));
            if (m < n) fams.push_back(make_family(FamilyKind::modified_toeplitz, f2, n, m));
        }
        std::size_t na = 1;
        for (unsigned i = 0; i < n; ++i) na *= 2;
        int per_family = std::max(2, count / 24);
        for (auto& fam : fams)
            for (int i = 0; i < per_family; ++i) {
                std::size_t ne = 1 + rng.below(3);
                if (i == 0) {
                    corpus.push_back({fam, uniform_conditional_fixture(rng, na, ne)});
                } else {
                    corpus.push_back({fam, random_joint(rng, na, ne, true, i % 2 == 0)});
                }
            }
        // mixed-rank originals with the worst-kernel normalization
        corpus.push_back({make_family(FamilyKind::full_random, f2, n, n),
                          random_joint(rng, na, 2, true)});
        corpus.push_back({make_family(FamilyKind::toeplitz, f2, n, n),
                          random_joint(rng, na, 2, true)});
    }

    int idx = 0;
    for (const Pair& c : corpus) {
        DualUniversality du = dual_universality(c.fam);
        double eps = std::max(du.epsilon_effective, 1e-12);
        double m = std::pow(2.0, c.fam.m);
        std::vector<double> pe = c.p.marginal_e_normalized();
        std::string tag = "/case" + std::to_string(idx);

        double fault = inject_fault ? 0.5 : 1.0;  // self-test hook

        double lk_d = exact_leakage(c.p, c.fam, Criterion::d1prime);
        s.leq("bounds/dominate_simple_d" + tag, "exact d1' under the plain bound", lk_d,
              fault * bound_simple(c.p, pe, m, eps, Criterion::d1prime).value, 1e-12);
        s.leq("bounds/dominate_renyi2_d" + tag, "exact d1' under the collision-smoothing bound",
              lk_d, bound_renyi2_opt(c.p, m, eps, Criterion::d1prime).value, 1e-12);
        BoundReport mt_d = bound_min_tail(c.p, m, eps, Criterion::d1prime);
        s.leq("bounds/dominate_tail_d" + tag, "exact d1' under the tail-form bound", lk_d,
              mt_d.value, 1e-12);
        s.leq("bounds/tail_lower_le_upper_d" + tag, "tail-form lower <= upper", *mt_d.lower_bound,
              mt_d.value, 1e-9);
        s.leq("bounds/dominate_chernoff_d" + tag, "exact d1' under the Chernoff-form bound", lk_d,
              bound_min_chernoff(c.p, m, eps, Criterion::d1prime).value, 1e-12);

        if (c.p.is_normalized()) {
            double lk_i = exact_leakage(c.p, c.fam, Criterion::Iprime);
            s.leq("bounds/dominate_simple_i" + tag, "exact I' under the plain bound", lk_i,
                  bound_simple(c.p, pe, m, eps, Criterion::Iprime).value, 1e-12);
            s.leq("bounds/dominate_renyi2_i" + tag, "exact I' under the collision-smoothing bound",
                  lk_i, bound_renyi2_opt(c.p, m, eps, Criterion::Iprime).value, 1e-12);
            BoundReport mt_i = bound_min_tail(c.p, m, eps, Criterion::Iprime);
            s.leq("bounds/dominate_tail_i" + tag, "exact I' under the tail-form bound", lk_i,
                  mt_i.value, 1e-12);
            s.leq("bounds/tail_lower_le_upper_i" + tag, "tail-form lower <= upper",
                  *mt_i.lower_bound, mt_i.value, 1e-9);
            s.leq("bounds/dominate_chernoff_i" + tag, "exact I' under the Chernoff-form bound",
                  lk_i, bound_min_chernoff(c.p, m, eps, Criterion::Iprime).value, 1e-12);
            s.leq("bounds/dominate_equivocation" + tag, "exact I' under the equivocation bound",
                  lk_i, bound_equivocation(c.p, m, eps).value, 1e-12);
        }

        // sharp collision inequality, exact to enumeration (the q^{-m} term is
        // q^{t-n} with the nominal kernel dimension t = n - m)
        double lhs_terms = 0.0;
        for (std::size_t i = 0; i < c.fam.members.size(); ++i) {
            std::vector<int> ftab = c.fam.members[i].map_table();
            JointSubDistribution out = c.p.pushforward(ftab, static_cast<std::size_t>(m));
            lhs_terms += c.fam.probs[i] * std::exp(-cond_renyi_rel(out, pe, 1.0));
        }
        double d2pe = renyi_divergence(c.p.marginal_e(), pe, 1.0);
        double rhs = eps * std::exp(-cond_renyi_rel(c.p, pe, 1.0)) +
                     std::pow(2.0, -static_cast<double>(c.fam.m)) * std::exp(d2pe);
        s.leq("bounds/sharp_collision" + tag, "expected collision mass under the dual bound",
              lhs_terms, rhs, 1e-12);
        ++idx;
        if (idx >= count) break;
    }

    // Dodis-Smith shift inequality through the delta-biased kernel ensembles
    for (unsigned n = 2; n <= 3; ++n)
        for (unsigned m = 1; m < n; ++m) {
            HashFamily fam = make_family(FamilyKind::modified_toeplitz, f2, n, m);
            ShiftEnsemble ens = kernel_code_ensemble(fam);
            double delta = delta_bias(ens);
            JointSubDistribution p = random_joint(rng, 1u << n, 2, true);
            std::vector<double> q = p.marginal_e_normalized();
            double lhs = 0.0;
            for (std::size_t i = 0; i < ens.dists.size(); ++i)
                lhs += ens.probs[i] * d2_distance(convolve_shift(p, f2, n, ens.dists[i]), q);
            s.leq("bounds/dodis_smith/n" + std::to_string(n) + "m" + std::to_string(m),
                  "shifted L2 distance within delta^2 of the original", lhs,
                  delta * delta * d2_distance(p, q), 1e-12);
        }

    // monotonicity in M and eps
    {
        JointSubDistribution p = random_joint(rng, 4, 2, true);
        std::vector<double> pe = p.marginal_e_normalized();
        bool mono = true;
        double prev_d = -1.0, prev_i = -1.0;
        for (double m : {2.0, 4.0, 8.0}) {
            double vd = bound_min_chernoff(p, m, 1.0, Criterion::d1prime).value;
            double vi = bound_renyi2_opt(p, m, 1.0, Criterion::Iprime).value;
            if (vd + 1e-12 < prev_d || vi + 1e-12 < prev_i) mono = false;
            prev_d = vd;
            prev_i = vi;
        }
        double e_lo = bound_simple(p, pe, 4.0, 0.5, Criterion::d1prime).value;
        double e_hi = bound_simple(p, pe, 4.0, 2.0, Criterion::d1prime).value;
        s.add("bounds/monotone", "bounds grow with M and eps", "trend", mono && e_lo <= e_hi + 1e-12);
    }

    // Chernoff step: the tail never exceeds its exponential transform
    {
        JointSubDistribution p = random_joint(rng, 3, 2, true);
        std::vector<double> q = p.marginal_e_normalized();
        Spectrum sp = Spectrum::single_letter(p, q);
        bool ok = true;
        for (double sv : {0.2, 0.7, 1.8})
            for (double rp : {0.2, 0.6, 1.2}) {
                double t = sp.tail(rp, true);
                double ub = std::exp(-sv * cond_renyi_rel(p, q, sv) + sv * rp);
                if (t > ub + 1e-12) ok = false;
            }
        s.add("bounds/chernoff_step", "tail <= exp(-s H_{1+s} + s R')", "inequality", ok);

        // the tail-form objective at the Chernoff R' never beats the Chernoff bound
        for (double m : {4.0, 8.0}) {
            BoundReport ch = bound_min_chernoff(p, m, 1.0, Criterion::Iprime);
            if (std::isfinite(ch.r_prime)) {
                double tail_at = eta(sp.tail(ch.r_prime, true), std::log(m)) +
                                 1.0 * m * std::exp(-ch.r_prime);
                s.leq("bounds/chernoff_dominates_tail_point/M" + fmt_double(m),
                      "tail objective at the Chernoff threshold is within the Chernoff value",
                      tail_at, ch.value, 1e-9);
            }
            s.leq("bounds/equivocation_le_chernoff/M" + fmt_double(m),
                  "equivocation refinement never exceeds the Chernoff form",
                  bound_equivocation(p, m, 1.0).value, ch.value, 1e-9);
        }
    }
}

void asymptotic_cases(Suite& s, Rng& rng) {
    JointSubDistribution std_p(2, 2, {0.4, 0.1, 0.1, 0.4});

    // curve properties on random instances
    for (int it = 0; it < 5; ++it) {
        JointSubDistribution p = random_joint(rng, 3, 3, true);
        double h = cond_shannon(p);
        for (auto kind : {ExponentKind::e_d, ExponentKind::e_I, ExponentKind::e_d_tilde,
                          ExponentKind::e_I_tilde}) {
            double prev = kInf;
            bool ok = true;
            for (int i = 0; i <= 12; ++i) {
                double r = 0.02 + (h + 0.4) * i / 12.0;
                double v = exponent(p, r, kind).value;
                if (v < -1e-15 || v > prev + 1e-9) ok = false;
                if (r >= h && v > 1e-9) ok = false;
                prev = v;
            }
            s.add("asym/curve/" + to_string(kind) + "/" + std::to_string(it),
                  "exponent curve is nonnegative, non-increasing, zero above H", "trend", ok);
        }
        RelationsReport rel = exponent_relations_check(
            p, std::vector<double>{0.1 * h, 0.4 * h, 0.7 * h, 0.95 * h});
        s.add("asym/relations/" + std::to_string(it), "exponent comparison relations", "inequality",
              rel.ok, rel.ok ? "" : rel.violations.front());
    }

    // strict separation for the standard correlated fixture
    {
        double r = 0.3;
        double ed = exponent(std_p, r, ExponentKind::e_d).value;
        double edt = exponent(std_p, r, ExponentKind::e_d_tilde).value;
        double ei = exponent(std_p, r, ExponentKind::e_I).value;
        double eit = exponent(std_p, r, ExponentKind::e_I_tilde).value;
        s.add("asym/strict_d", "collision smoothing beats min smoothing (d)", "inequality",
              ed > edt + 1e-6, fmt_double(ed) + " vs " + fmt_double(edt));
        s.add("asym/strict_i", "collision smoothing beats min smoothing (I)", "inequality",
              ei > eit + 1e-6, fmt_double(ei) + " vs " + fmt_double(eit));
    }
    // equality for uniform conditionals
    {
        JointSubDistribution u = uniform_conditional_fixture(rng, 4, 2);
        double h = cond_shannon(u);
        double r = 0.5 * h;
        s.close("asym/equal_d_uniform", "min smoothing is tight for uniform conditionals (d)",
                exponent(u, r, ExponentKind::e_d).value,
                exponent(u, r, ExponentKind::e_d_tilde).value, 1e-9);
        s.close("asym/equal_i_uniform", "min smoothing is tight for uniform conditionals (I)",
                exponent(u, r, ExponentKind::e_I).value,
                exponent(u, r, ExponentKind::e_I_tilde).value, 1e-9);
    }

    // additivity of all three entropy variants at n = 2, 3
    {
        JointSubDistribution p = random_joint(rng, 2, 2, true);
        for (unsigned n : {2u, 3u}) {
            JointSubDistribution pn = p.iid_power(n);
            bool ok = true;
            for (double sv : {0.5, 1.0, 2.0}) {
                if (std::abs(cond_renyi_down(pn, sv) - n * cond_renyi_down(p, sv)) > 1e-9) ok = false;
                if (std::abs(cond_renyi_up(pn, sv) - n * cond_renyi_up(p, sv)) > 1e-9) ok = false;
                std::vector<double> q = p.marginal_e_normalized();
                std::vector<double> qn(pn.size_e(), 1.0);
                for (std::size_t e = 0; e < pn.size_e(); ++e) {
                    std::size_t t = e;
                    for (unsigned i = 0; i < n; ++i) {
                        qn[e] *= q[t % p.size_e()];
                        t /= p.size_e();
                    }
                }
                if (std::abs(cond_renyi_rel(pn, qn, sv) - n * cond_renyi_rel(p, q, sv)) > 1e-9)
                    ok = false;
            }
            s.add("asym/additivity/n" + std::to_string(n), "entropies add over i.i.d. blocks",
                  "equality", ok);
        }
    }

    // tilted family: D + H decreases along s and the Legendre identity holds
    {
        bool mono = true;
        double prev = kInf;
        for (double sv : {0.0, 0.3, 0.7, 1.2, 2.0, 4.0}) {
            JointSubDistribution t = tilted_distribution(std_p, sv);
            double v = renyi_divergence(t.data(), std_p.data(), 0.0) + cond_shannon(t);
            if (v > prev + 1e-10) mono = false;
            prev = v;
        }
        s.add("asym/tilted_monotone", "D + H decreases along the tilt", "trend", mono);
        TypeExponentReport ter = type_exponent_check(std_p, 0.45, 200);
        s.add("asym/type_exponent", "constrained type minimum matches the closed form", "equality",
              ter.ok, "gap=" + fmt_double(ter.gap));
    }

    // second order endpoints
    {
        s.close("asym/second_order_zero", "zero rate gives probability one", second_order(std_p, 0.0),
                1.0, 1e-12);
        s.leq("asym/second_order_low", "very negative rates vanish", second_order(std_p, -40.0),
              1e-9);
        s.close("asym/second_order_high", "very positive rates saturate at two",
                second_order(std_p, 40.0), 2.0, 1e-9);
    }
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& options) {
    Suite s;
    s.report.options = options;
    Rng rng(options.corpus == "builtin" ? 1 : options.seed);
    int count = options.corpus == "builtin" ? 60 : options.count;

    field_cases(s);
    dist_cases(s, rng, count);
    entropy_cases(s, rng, count);
    hash_cases(s, rng);
    bounds_cases(s, rng, count, options.inject_fault);
    asymptotic_cases(s, rng);
    return s.report;
}

json SuiteReport::to_json() const {
    json j;
    j["corpus"] = options.corpus;
    j["seed"] = options.seed;
    j["count"] = options.count;
    j["fault_injected"] = options.inject_fault;
    j["passed"] = passed;
    j["failed"] = failed;
    json arr = json::array();
    for (const CaseResult& c : cases) {
        json cj;
        cj["id"] = c.id;
        cj["kind"] = c.kind;
        cj["passed"] = c.passed;
        if (!c.description.empty()) cj["description"] = c.description;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    j["cases"] = arr;
    return j;
}

}  // namespace pa::verify
