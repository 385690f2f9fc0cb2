#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pa/asymptotic.hpp"
#include "pa/bounds.hpp"
#include "pa/entropy.hpp"
#include "pa/mathutil.hpp"
#include "pa/verify.hpp"

using namespace pa;

namespace {
const JointSubDistribution kStd(2, 2, {0.4, 0.1, 0.1, 0.4});
}

TEST_CASE("exponents of a uniform source") {
    JointSubDistribution u(4, 1, {0.25, 0.25, 0.25, 0.25});
    double r = std::log(2.0);
    ExponentResult ed = exponent(u, r, ExponentKind::e_d);
    CHECK(ed.value == doctest::Approx(0.5 * (std::log(4.0) - r)).epsilon(1e-9));
    CHECK(ed.optimizer == doctest::Approx(0.5).epsilon(1e-6));

    ExponentResult edt = exponent(u, r, ExponentKind::e_d_tilde);
    CHECK(edt.value == doctest::Approx(ed.value).epsilon(1e-9));  // equality for flat entropies
    CHECK(edt.boundary);

    // everything dies at and above the entropy rate
    for (auto kind : {ExponentKind::e_d, ExponentKind::e_I, ExponentKind::e_d_tilde,
                      ExponentKind::e_I_tilde, ExponentKind::e_d_bar})
        CHECK(exponent(u, std::log(4.0) + 0.05, kind).value == 0.0);
}

TEST_CASE("strict separation on the standard fixture") {
    double r = 0.3;
    double ed = exponent(kStd, r, ExponentKind::e_d).value;
    double edt = exponent(kStd, r, ExponentKind::e_d_tilde).value;
    double ei = exponent(kStd, r, ExponentKind::e_I).value;
    double eit = exponent(kStd, r, ExponentKind::e_I_tilde).value;
    CHECK(ed > edt + 1e-6);
    CHECK(ei > eit + 1e-6);

    // frozen values, cross-checked against a dense grid below
    CHECK(ed == doctest::Approx(0.046418).epsilon(1e-4));
    CHECK(edt == doctest::Approx(0.033609).epsilon(1e-4));

    // dense-grid oracle on both objectives
    double ed_grid = 0.0, edt_grid = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        double t = 0.5 * i / 10000.0;
        if (t > 0.0 && t < 1.0)
            ed_grid = std::max(ed_grid, t * (cond_renyi_up(kStd, t / (1.0 - t)) - r));
        double s = 50.0 * i / 10000.0;
        double hs = s == 0.0 ? cond_shannon(kStd) : cond_renyi_up(kStd, s);
        edt_grid = std::max(edt_grid, s * (hs - r) / (1.0 + 2.0 * s));
    }
    CHECK(ed == doctest::Approx(ed_grid).epsilon(1e-7));
    CHECK(edt == doctest::Approx(edt_grid).epsilon(1e-7));
}

TEST_CASE("exponent relations on random instances") {
    Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        JointSubDistribution p = pa::verify::random_joint(rng, 3, 3, true);
        double h = cond_shannon(p);
        std::vector<double> grid;
        for (int g = 0; g < 20; ++g) grid.push_back(0.05 * h + 0.9 * h * g / 19.0);
        RelationsReport rep = exponent_relations_check(p, grid);
        CHECK(rep.ok);
        if (!rep.ok)
            for (const auto& v : rep.violations) MESSAGE(v);
    }
}

TEST_CASE("curves are monotone and vanish above the entropy") {
    std::vector<double> grid;
    double h = cond_shannon(kStd);
    for (int i = 0; i <= 15; ++i) grid.push_back(0.02 + (h + 0.3 - 0.02) * i / 15.0);
    for (auto kind : {ExponentKind::e_d, ExponentKind::e_I, ExponentKind::e_d_tilde,
                      ExponentKind::e_I_tilde}) {
        auto curve = exponent_curve(kStd, grid, kind);
        double prev = 1e300;
        for (const auto& s : curve) {
            CHECK(s.value >= 0.0);
            CHECK(s.value <= prev + 1e-9);
            if (s.r >= h + 1e-9) CHECK(s.value <= 1e-9);
            prev = s.value;
        }
    }
}

TEST_CASE("second order limit") {
    CHECK(second_order(kStd, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(second_order(kStd, -50.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(second_order(kStd, 50.0) == doctest::Approx(2.0).epsilon(1e-9));
    JointSubDistribution u(2, 2, {0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(second_order(u, 0.1), DegenerateVariance);
}

TEST_CASE("finite-n tails march toward the gaussian limit") {
    // R chosen on the flank where the lattice wiggle is small relative to the gap
    double r = 1.1;
    double limit = second_order(kStd, r);
    std::vector<double> pe = kStd.marginal_e_normalized();
    double h = cond_shannon(kStd);
    double prev_gap = 1e300;
    for (unsigned n : {25u, 100u, 400u}) {
        double rp = n * h + std::sqrt(static_cast<double>(n)) * r +
                    std::pow(static_cast<double>(n), 0.25);
        Spectrum sp = spectrum_power(kStd, pe, n);
        double gap = std::abs(2.0 * sp.tail(rp, true) - limit);
        CHECK(gap < prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.1);
}

TEST_CASE("equivocation rate") {
    double h = cond_shannon(kStd);
    bool regime = false;
    CHECK(equivocation_rate(kStd, h, &regime) == doctest::Approx(0.0));
    CHECK(!regime);
    CHECK(equivocation_rate(kStd, 1.0) == doctest::Approx(1.0 - h).epsilon(1e-12));
    CHECK(h == doctest::Approx(0.5004).epsilon(1e-4));
    CHECK(equivocation_rate(kStd, 0.2, &regime) == 0.0);
    CHECK(regime);

    JointSubDistribution bit(2, 1, {0.5, 0.5});
    CHECK(equivocation_rate(bit, std::log(2.0)) == doctest::Approx(0.0));
}

TEST_CASE("tilted distributions") {
    JointSubDistribution t0 = tilted_distribution(kStd, 0.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t e = 0; e < 2; ++e) CHECK(t0.at(a, e) == kStd.at(a, e));

    // large tilts concentrate each conditional on its mode
    JointSubDistribution t_big = tilted_distribution(kStd, 200.0);
    CHECK(t_big.at(0, 0) + t_big.at(1, 1) > 0.99);

    // D + H is continuous and non-increasing along the tilt
    double prev = 1e300;
    for (double s : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        JointSubDistribution t = tilted_distribution(kStd, s);
        double v = renyi_divergence(t.data(), kStd.data(), 0.0) + cond_shannon(t);
        CHECK(v <= prev + 1e-10);
        prev = v;
    }
}

TEST_CASE("type exponent identity") {
    TypeExponentReport rep = type_exponent_check(kStd, 0.45, 200);
    CHECK(rep.ok);
    CHECK(std::abs(rep.gap) <= 2e-2);

    TypeExponentReport rep2 = type_exponent_check(kStd, 0.5, 200);
    CHECK(rep2.ok);
}

TEST_CASE("additivity holds exactly at small powers") {
    Rng rng(43);
    JointSubDistribution p = pa::verify::random_joint(rng, 2, 2, true);
    for (unsigned n : {2u, 3u}) {
        JointSubDistribution pn = p.iid_power(n);
        for (double s : {0.5, 1.0, 2.0}) {
            CHECK(cond_renyi_down(pn, s) == doctest::Approx(n * cond_renyi_down(p, s)).epsilon(1e-11));
            CHECK(cond_renyi_up(pn, s) == doctest::Approx(n * cond_renyi_up(p, s)).epsilon(1e-11));
        }
        CHECK(cond_shannon(pn) == doctest::Approx(n * cond_shannon(p)).epsilon(1e-11));
    }
}

TEST_CASE("tail bound decays at the min-smoothing exponent") {
    // the per-n log of the tail-form bound approaches -e_d_tilde from below
    double r = 0.3;
    double target = exponent(kStd, r, ExponentKind::e_d_tilde).value;
    double y20, y40;
    {
        double m = std::floor(std::exp(20.0 * r));
        y20 = -std::log(bound_min_tail(kStd, m, 1.0, Criterion::d1prime, 20).value) / 20.0;
        m = std::floor(std::exp(40.0 * r));
        y40 = -std::log(bound_min_tail(kStd, m, 1.0, Criterion::d1prime, 40).value) / 40.0;
    }
    CHECK(std::abs(y40 - target) < std::abs(y20 - target));  // marching toward the exponent
    CHECK(std::abs(y40 - target) <= 0.1 * target);

    // the collision-smoothing bound decays at least at e_d
    double ed = exponent(kStd, r, ExponentKind::e_d).value;
    double b20 = bound_renyi2_opt(kStd, std::exp(20.0 * r), 1.0, Criterion::d1prime, 20).value;
    double b40 = bound_renyi2_opt(kStd, std::exp(40.0 * r), 1.0, Criterion::d1prime, 40).value;
    double slope = (std::log(b40) - std::log(b20)) / 20.0;
    CHECK(slope <= -0.9 * ed);
}
