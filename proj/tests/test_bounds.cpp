#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pa/bounds.hpp"
#include "pa/mathutil.hpp"
#include "pa/verify.hpp"

using namespace pa;

namespace {
const JointSubDistribution kStd(2, 2, {0.4, 0.1, 0.1, 0.4});
const JointSubDistribution kUni(2, 2, {0.25, 0.25, 0.25, 0.25});
const std::vector<double> kHalf = {0.5, 0.5};
}

TEST_CASE("plain bounds") {
    BoundReport d = bound_simple(kUni, kHalf, 2.0, 1.0, Criterion::d1prime);
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-13));  // vacuous at full rate

    BoundReport i = bound_simple(kUni, kHalf, 2.0, 1.0, Criterion::Iprime);
    CHECK(i.value == doctest::Approx(std::log(2.0)).epsilon(1e-13));

    BoundReport is = bound_simple(kStd, kHalf, 2.0, 1.0, Criterion::Iprime);
    CHECK(is.value == doctest::Approx(std::log(2.36)).epsilon(1e-13));

    CHECK_THROWS_AS(bound_simple(kUni, kHalf, 1.0, 1.0, Criterion::Iprime), DomainError);
    JointSubDistribution sub(2, 2, {0.2, 0.1, 0.1, 0.2});
    CHECK_THROWS_AS(bound_simple(sub, kHalf, 2.0, 1.0, Criterion::Iprime), NotNormalized);
    CHECK_NOTHROW(bound_simple(sub, kHalf, 2.0, 1.0, Criterion::d1prime));
}

TEST_CASE("collision smoothing bounds") {
    BoundReport d = bound_renyi2(kUni, 2.0, 1.0, Criterion::d1prime, 0.5);
    CHECK(d.value == doctest::Approx(3.0).epsilon(1e-13));  // vacuous at full rate

    // prefactor matches the eps = 1 special case exactly
    CHECK(2.0 + std::sqrt(1.0) == 3.0);

    CHECK_THROWS_AS(bound_renyi2(kStd, 2.0, 1.0, Criterion::d1prime, 0.7), DomainError);
    CHECK_THROWS_AS(bound_renyi2(kStd, 2.0, 1.0, Criterion::Iprime, 1.2), DomainError);

    // rate-for-rate a longer block strictly improves the bound
    double rate = 0.5 * cond_renyi_up(kStd, 1.0);
    JointSubDistribution p4 = kStd.iid_power(4);
    double b4 = bound_renyi2_opt(p4, std::exp(4.0 * rate), 1.0, Criterion::d1prime).value;
    double b8 = bound_renyi2_opt(kStd, std::exp(8.0 * rate), 1.0, Criterion::d1prime, 8).value;
    CHECK(b8 < b4);
    // and the analytic i.i.d. lift agrees with the explicit product
    double b4_lift = bound_renyi2_opt(kStd, std::exp(4.0 * rate), 1.0, Criterion::d1prime, 4).value;
    CHECK(b4 == doctest::Approx(b4_lift).epsilon(1e-9));
}

TEST_CASE("tail-form bound on the uniform fixture") {
    BoundReport rep = bound_min_tail(kUni, 2.0, 1.0, Criterion::Iprime);
    // single breakpoint at R' = log 2: eta(0, log 2) + 2 exp(-log 2) = 1
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.r_prime == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    REQUIRE(rep.lower_bound.has_value());
    CHECK(*rep.lower_bound <= rep.value + 1e-9);
}

TEST_CASE("tail-form bound matches a dense grid oracle") {
    // i.i.d. n = 10, M = e^5: scan the breakpoint range densely and confirm
    // no interior R' beats the breakpoint scan
    unsigned n = 10;
    double m = std::exp(5.0);
    BoundReport rep = bound_min_tail(kStd, m, 1.0, Criterion::Iprime, n);
    Spectrum sp = spectrum_power(kStd, kStd.marginal_e_normalized(), n);
    double lo = -sp.atoms().back().value, hi = -sp.atoms().front().value;
    double grid_best = 1e300;
    for (int i = 0; i <= 100000; ++i) {
        double rp = lo + (hi - lo) * i / 100000.0;
        double v = eta(sp.tail(rp, true), std::log(m)) + m * std::exp(-rp);
        grid_best = std::min(grid_best, v);
    }
    for (const auto& atom : sp.atoms()) {  // include the breakpoints themselves
        double rp = -atom.value;
        double v = eta(sp.tail(rp, true), std::log(m)) + m * std::exp(-rp);
        grid_best = std::min(grid_best, v);
    }
    CHECK(rep.value == doctest::Approx(grid_best).epsilon(1e-9));
    CHECK(rep.value <= grid_best + 1e-12);
}

TEST_CASE("tail-form lower bound stays below the upper bound") {
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        JointSubDistribution p = pa::verify::random_joint(rng, 2 + rng.below(2), 2, true);
        for (double m : {2.0, 4.0, 8.0}) {
            for (Criterion c : {Criterion::d1prime, Criterion::Iprime}) {
                BoundReport rep = bound_min_tail(p, m, 1.0 + rng.uniform(), c);
                REQUIRE(rep.lower_bound.has_value());
                CHECK(*rep.lower_bound <= rep.value + 1e-9);
            }
        }
    }
}

TEST_CASE("chernoff-form bound") {
    // uniform conditionals freeze the entropies: closed form at the limit slope
    JointSubDistribution u(4, 1, {0.25, 0.25, 0.25, 0.25});
    double h = std::log(4.0);
    double r = std::log(2.0);
    BoundReport rep = bound_min_chernoff(u, 2.0, 1.0, Criterion::d1prime);
    CHECK(rep.value == doctest::Approx(3.0 * std::exp(-0.5 * (h - r))).epsilon(1e-9));

    // at full rate the bound is vacuous with the optimizer at s = 0
    BoundReport vac = bound_min_chernoff(kStd, 4.0, 1.0, Criterion::d1prime);
    CHECK(vac.value == doctest::Approx(3.0).epsilon(1e-9));

    // chernoff step inequality on random instances, both criteria
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        JointSubDistribution p = pa::verify::random_joint(rng, 3, 2, true);
        std::vector<double> q = p.marginal_e_normalized();
        Spectrum sp = Spectrum::single_letter(p, q);
        for (double s : {0.3, 1.0, 2.5})
            for (double rp : {0.3, 0.8, 1.5})
                CHECK(sp.tail(rp, true) <=
                      std::exp(-s * cond_renyi_rel(p, q, s) + s * rp) + 1e-12);
    }
}

TEST_CASE("equivocation bound") {
    BoundReport rep = bound_equivocation(kUni, 2.0, 1.0);
    CHECK(rep.value >= -1e-12);
    CHECK(rep.value <= std::log(2.0) + std::log(3.0) + 1e-9);

    // refinement never exceeds the chernoff form (log(1+x) <= x)
    Rng rng(37);
    for (int i = 0; i < 15; ++i) {
        JointSubDistribution p = pa::verify::random_joint(rng, 3, 2, true);
        for (double m : {4.0, 8.0}) {
            double eq = bound_equivocation(p, m, 1.0).value;
            double ch = bound_min_chernoff(p, m, 1.0, Criterion::Iprime).value;
            CHECK(eq <= ch + 1e-9);
        }
    }

    // the asymptotic equivocation rate emerges at n = 50 for a mild fixture
    JointSubDistribution near(2, 2, {0.26, 0.24, 0.24, 0.26});
    double h = cond_shannon(near);
    for (double gap : {0.2, 0.5}) {
        double r = h + gap;
        unsigned n = 50;
        double m = std::ceil(std::exp(n * r));
        double per_n = bound_equivocation(near, m, 1.0, n).value / n;
        CHECK(std::abs(per_n - gap) < 0.05);
    }
}

TEST_CASE("exact leakage") {
    const FieldSpec& f2 = FieldSpec::get(2, 1);

    // ideal input: families of surjective maps leak nothing (linear surjections
    // have equal-size fibers, so the hashed output stays uniform)
    JointSubDistribution ideal(4, 2, {0.15, 0.1, 0.15, 0.1, 0.15, 0.1, 0.15, 0.1});
    HashFamily fam = make_family(FamilyKind::modified_toeplitz, f2, 2, 1);
    CHECK(exact_leakage(ideal, fam, Criterion::d1prime) == doctest::Approx(0.0));
    CHECK(exact_leakage(ideal, fam, Criterion::Iprime) == doctest::Approx(0.0));
    // a family with a constant member does leak from the ideal input: the
    // zero map sends everything to one symbol
    HashFamily with_zero = make_family(FamilyKind::full_random, f2, 1, 1);
    JointSubDistribution ideal2(2, 2, {0.3, 0.2, 0.3, 0.2});
    CHECK(exact_leakage(ideal2, with_zero, Criterion::d1prime) == doctest::Approx(0.5));

    // identity family on a perfectly correlated bit keeps everything
    LinearHash ident;
    ident.spec = &f2;
    ident.n = 1;
    ident.m = 1;
    ident.mat = {1};
    HashFamily id_fam = custom_family(f2, 1, 1, {ident}, {1.0});
    JointSubDistribution corr(2, 2, {0.5, 0.0, 0.0, 0.5});
    CHECK(exact_leakage(corr, id_fam, Criterion::d1prime) == doctest::Approx(1.0));

    // hand enumeration oracle: full_random F_2 2->1 on a deterministic source
    JointSubDistribution det(4, 2, {0.25, 0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.25});
    HashFamily fr = make_family(FamilyKind::full_random, f2, 2, 1);
    double expect = 0.0;
    for (unsigned code = 0; code < 4; ++code) {
        // matrix [c0 c1] acts on (a0, a1); enumerate by hand
        unsigned c0 = code & 1u, c1 = (code >> 1) & 1u;
        double out[2][2] = {{0, 0}, {0, 0}};
        for (unsigned a = 0; a < 4; ++a) {
            unsigned a0 = a & 1u, a1 = (a >> 1) & 1u;
            unsigned b = (c0 * a0 + c1 * a1) & 1u;
            for (unsigned e = 0; e < 2; ++e) out[b][e] += det.at(a, e);
        }
        double pe[2] = {out[0][0] + out[1][0], out[0][1] + out[1][1]};
        double d = 0.0;
        for (unsigned b = 0; b < 2; ++b)
            for (unsigned e = 0; e < 2; ++e) d += std::abs(out[b][e] - 0.5 * pe[e]);
        expect += 0.25 * d;
    }
    double got = exact_leakage(det, fr, Criterion::d1prime);
    CHECK(got == doctest::Approx(expect).epsilon(1e-13));
    // and the bounds dominate it
    double eps = dual_universality(fr).epsilon;
    CHECK(got <= bound_simple(det, det.marginal_e_normalized(), 2.0, eps, Criterion::d1prime).value +
                     1e-12);
    CHECK(got <= bound_min_tail(det, 2.0, eps, Criterion::d1prime).value + 1e-12);
}

TEST_CASE("bound error paths") {
    JointSubDistribution sub(2, 2, {0.2, 0.1, 0.1, 0.2});
    CHECK_THROWS_AS(bound_equivocation(sub, 4.0, 1.0), NotNormalized);
    CHECK_THROWS_AS(bound_min_tail(sub, 4.0, 1.0, Criterion::Iprime), NotNormalized);
    CHECK_NOTHROW(bound_min_tail(sub, 4.0, 1.0, Criterion::d1prime));
    CHECK_THROWS_AS(bound_min_tail(kStd, 4.0, 1.0, Criterion::d1prime, 1, 1.0), DomainError);
    CHECK_THROWS_AS(bound_min_chernoff(kStd, 1.5, 1.0, Criterion::d1prime), DomainError);
    CHECK_THROWS_AS(kStd.iid_power(0), DomainError);

    const FieldSpec& f2 = FieldSpec::get(2, 1);
    HashFamily fam = make_family(FamilyKind::modified_toeplitz, f2, 2, 1);
    JointSubDistribution wrong(3, 2, {0.2, 0.2, 0.2, 0.2, 0.1, 0.1});
    CHECK_THROWS_AS(exact_leakage(wrong, fam, Criterion::d1prime), ShapeError);
    CHECK_THROWS_AS(exact_leakage(kStd, fam, Criterion::d1), DomainError);
}

TEST_CASE("bound report serialization") {
    BoundReport rep = bound_simple(kUni, kHalf, 2.0, 1.0, Criterion::Iprime);
    std::string row = bound_csv_row(rep);
    CHECK(row.find("simple,Iprime,2,1,") == 0);
    CHECK(bound_csv_header() == "method,criterion,M,eps,value,s,Rprime");
}
