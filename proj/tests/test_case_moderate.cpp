#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "froude/case_moderate.hpp"
#include "froude/kernels.hpp"
#include "froude/numerics.hpp"

using namespace froude;

namespace {

// Independent route for J1/J2: the defining integrals of the velocity
// defect eta^(-1) - sqrt(2(r - y)) over [y1, eta], by adaptive quadrature.
double j1_oracle(double e, double r) {
    const double y1 = r - 0.5 / (e * e);
    const double integral = numerics::integrate_adaptive(
        [e, r](double y) { return 1.0 / e - std::sqrt(2.0 * (r - y)); }, y1, e, 1e-12);
    return integral * integral / (2.0 * y1);
}

double j2_oracle(double e, double r) {
    const double y1 = r - 0.5 / (e * e);
    return 0.5 * numerics::integrate_adaptive(
                     [e, r](double y) {
                         const double g = 1.0 / e - std::sqrt(2.0 * (r - y));
                         return g * g;
                     },
                     y1, e, 1e-12);
}

}  // namespace

TEST_CASE("J1/J2 closed forms at the crest edge") {
    const double r = 1.55;
    // symbolic simplifications at eta = r
    const double j1_exact = 1.0 / (36.0 * std::pow(r, 4) * (2.0 * std::pow(r, 3) - 1.0));
    const double j2_exact = 1.0 / (24.0 * std::pow(r, 4));
    CHECK(case_moderate::j1(r, r) == doctest::Approx(j1_exact).epsilon(1e-12));
    CHECK(case_moderate::j2(r, r) == doctest::Approx(j2_exact).epsilon(1e-12));
    // mpmath references
    CHECK(case_moderate::j1(r, r) == doctest::Approx(0.000746384335848).epsilon(1e-10));
    CHECK(case_moderate::j2(r, r) == doctest::Approx(0.0072187494022).epsilon(1e-10));
    // quadrature oracle hits the same values
    CHECK(j1_oracle(r, r) == doctest::Approx(case_moderate::j1(r, r)).epsilon(1e-9));
    CHECK(j2_oracle(r, r) == doctest::Approx(case_moderate::j2(r, r)).epsilon(1e-9));
}

TEST_CASE("J1/J2 match their defining integrals at the published fraction") {
    const double r = 1.55;
    const double e = 0.95 * r;
    CHECK(case_moderate::j1(e, r) == doctest::Approx(0.000150239333523762).epsilon(1e-11));
    CHECK(case_moderate::j2(e, r) == doctest::Approx(0.00180215053667704).epsilon(1e-11));
    CHECK(std::fabs(case_moderate::j1(e, r) - j1_oracle(e, r)) <= 1e-10);
    CHECK(std::fabs(case_moderate::j2(e, r) - j2_oracle(e, r)) <= 1e-10);
}

TEST_CASE("J1/J2 equal their quadrature oracles at 200 random admissible points") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ur(1.5, 1.5875);
    std::uniform_real_distribution<double> uu(0.95, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng);
        const double e = uu(rng) * r;
        REQUIRE(std::fabs(case_moderate::j1(e, r) - j1_oracle(e, r)) <= 1e-10);
        REQUIRE(std::fabs(case_moderate::j2(e, r) - j2_oracle(e, r)) <= 1e-10);
    }
}

TEST_CASE("J1/J2 are non-negative on the admissible region") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ur(1.5, 1.5875);
    std::uniform_real_distribution<double> uu(0.9, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double r = ur(rng);
        const double e = uu(rng) * r;
        REQUIRE(case_moderate::j1(e, r) >= 0.0);
        REQUIRE(case_moderate::j2(e, r) >= 0.0);
    }
}

TEST_CASE("J domain errors") {
    CHECK_THROWS_AS(case_moderate::j1(1.6, 1.55), std::domain_error);
    CHECK_THROWS_AS(case_moderate::j2(1.6, 1.55), std::domain_error);
    CHECK_THROWS_AS(case_moderate::j1(-1.0, 1.55), std::domain_error);
    CHECK_THROWS_AS(case_moderate::j_total(0.9, 1.55), std::domain_error);  // below d_plus
}

TEST_CASE("j_total assembly") {
    const double r = 1.55;
    SUBCASE("at the crest edge") {
        const auto ev = case_moderate::j_total(r, r);
        const double expected =
            0.5 / r + 0.5 * r * r + case_moderate::j1(r, r) + case_moderate::j2(r, r);
        CHECK(ev.j_total == doctest::Approx(expected).epsilon(1e-14));
        CHECK(ev.y1_mod == doctest::Approx(r - 0.5 / (r * r)).epsilon(1e-14));
        CHECK(ev.y1_mod < ev.eta_hat);
    }
    SUBCASE("degenerate crest at the critical constant stays finite") {
        const auto ev = case_moderate::j_total(1.5, 1.5);
        CHECK(std::isfinite(ev.j_total));
    }
    SUBCASE("consistency with the far case at theta = 0.95") {
        const double d = 0.82062;
        const double rr = core::bernoulli_from_depth(d);
        const auto ev = case_moderate::j_total(0.95 * rr, rr);
        // J = script_S + j1 + j2, so J exceeds the flow force by the correction
        CHECK(ev.j_total >= core::flow_force(d));
        CHECK(ev.j_total - core::script_S(0.95 * rr, rr) ==
              doctest::Approx(ev.j1 + ev.j2).epsilon(1e-12));
    }
}

TEST_CASE("J dominates script_S by exactly j1 + j2") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(1.5, 1.5875);
    std::uniform_real_distribution<double> uu(0.9, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng);
        const double e = uu(rng) * r;
        const auto ev = case_moderate::j_total(e, r);
        REQUIRE(ev.j_total - core::script_S(e, r) >= 0.0);
    }
}

TEST_CASE("derivative against central differences at 200 interior points") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> ur(1.5, 1.5875);
    std::uniform_real_distribution<double> uu(0.9, 0.999);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng);
        const double e = uu(rng) * r;
        const double fd = numerics::finite_difference(
            [r](double x) { return case_moderate::j_total(x, r).j_total; }, e, 1e-6);
        REQUIRE(std::fabs(case_moderate::dj_dhat(e, r) - fd) <= 1e-6);
    }
}

TEST_CASE("derivative limit continuity at the crest") {
    // the edge expansion is L + a sqrt(eps) + b eps + ...; quadratic
    // extrapolation in u = sqrt(eps) through eps = 1e-4, 1e-6, 1e-8
    // removes both correction terms
    for (double r : {1.5, 1.55, 1.5875}) {
        const double limit = kernels::dj_deta_crest(r);
        const double u1 = 1e-2, u2 = 1e-3, u3 = 1e-4;
        const double x1 = case_moderate::dj_dhat(r - u1 * u1, r);
        const double x2 = case_moderate::dj_dhat(r - u2 * u2, r);
        const double x3 = case_moderate::dj_dhat(r - u3 * u3, r);
        const double w1 = u2 * u3 / ((u1 - u2) * (u1 - u3));
        const double w2 = -u1 * u3 / ((u1 - u2) * (u2 - u3));
        const double w3 = u1 * u2 / ((u1 - u3) * (u2 - u3));
        const double extrap = w1 * x1 + w2 * x2 + w3 * x3;
        CHECK(std::fabs(extrap - limit) / std::fabs(limit) <= 1e-4);
        // raw values approach the limit monotonically from below
        CHECK(x1 < x2);
        CHECK(x2 < x3);
        CHECK(x3 < limit);
    }
}

TEST_CASE("derivative is negative at the published probes") {
    CHECK(case_moderate::dj_dhat(0.95 * 1.5, 1.5) < 0.0);
    CHECK(case_moderate::dj_dhat(1.4, 1.5875) < 0.0);
    CHECK(kernels::dj_deta_crest(std::cbrt(4.0)) < 0.0);
}

TEST_CASE("monotonicity certificate on a desk grid") {
    const auto cert = case_moderate::verify_monotone(
        case_moderate::default_monotone_region(200, 200), 2);
    CHECK(cert.passed());
    // the sampled maximum is the crest value at the largest r
    CHECK(cert.max_value == doctest::Approx(kernels::dj_deta_crest(1.5875)).epsilon(1e-12));
    CHECK(cert.worst_x == doctest::Approx(1.5875));
    CHECK(cert.worst_y == doctest::Approx(1.5875));
    CHECK(cert.margin == doctest::Approx(-cert.max_value));
}

TEST_CASE("monotonicity holds on the extended region eta >= 1.3") {
    auto region = case_moderate::default_monotone_region(150, 150);
    region.y_lo = 1.3;
    const auto cert = case_moderate::verify_monotone(region, 1);
    CHECK(cert.passed());
}

TEST_CASE("certificate is stable under doubled resolution and worker count") {
    const auto coarse = case_moderate::verify_monotone(
        case_moderate::default_monotone_region(100, 100), 1);
    const auto fine = case_moderate::verify_monotone(
        case_moderate::default_monotone_region(200, 200), 3);
    CHECK(coarse.passed());
    CHECK(fine.passed());
    // the max lives on the crest edge, which both resolutions fold in exactly
    CHECK(coarse.max_value == fine.max_value);
}

TEST_CASE("generic certify_negative covers the derivative region too") {
    auto region = case_moderate::default_monotone_region(120, 120);
    const auto cert = numerics::certify_negative(
        [](double r, double e) { return case_moderate::dj_dhat(e, r); }, region,
        [](double r, double e) { return e <= r; });
    CHECK(cert.passed());
}

TEST_CASE("factored-identity spot checks from an independent expansion") {
    // The chain verifier's identity, re-derived here term by term:
    // M(e, r) dJ/d(eta) with M = 9 e^3 (1 - 2 e^2 r)^2 / (2 sqrt(2(r-e)))
    // equals the eight-term expansion below.
    const auto expansion = [](double e, double r) {
        const double s = r - e;
        const double s2 = std::sqrt(2.0 * s);
        return std::pow(e, 7) * r * (21.0 / (e * e * r) - 18.0) +
               std::pow(e, 8) * r * s2 *
                   (12.0 - 10.0 / (e * e * r) - 4.0 * r / std::pow(e, 4) -
                    4.0 / std::pow(e, 3) + 6.0 * r / e) +
               9.0 * e * e * s2 * (e - 0.5 * r) + 3.0 * std::sqrt(s) / std::sqrt(2.0) -
               std::pow(e, 3) * r * (18.0 * e - 12.0 * r) - e * e - 2.0 * e * r -
               1.0 / (4.0 * e * e * s2);
    };
    const auto multiplier = [](double e, double r) {
        const double q = 1.0 - 2.0 * e * e * r;
        return 9.0 * std::pow(e, 3) * q * q / (2.0 * std::sqrt(2.0 * (r - e)));
    };
    const struct {
        double e, r;
    } points[] = {{0.96 * 1.55, 1.55}, {0.95 * 1.5, 1.5}, {0.99 * 1.58, 1.58},
                  {0.97 * std::cbrt(4.0), std::cbrt(4.0)}};
    for (const auto& pt : points) {
        const double lhs = multiplier(pt.e, pt.r) * case_moderate::dj_dhat(pt.e, pt.r);
        const double rhs = expansion(pt.e, pt.r);
        INFO("e = " << pt.e << ", r = " << pt.r);
        REQUIRE(std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)) <= 1e-8);
    }
}

TEST_CASE("verification chain") {
    const auto report = case_moderate::verify_chain(300, 2);
    CHECK(report.ok);
    REQUIRE(report.steps.size() == 8);
    for (const auto& step : report.steps) {
        INFO(step.name);
        CHECK(step.ok);
    }
    // identity residual is far below the 1e-8 gate
    CHECK(report.steps[0].margin >= 0.9e-8);
    // analytic worst case of the k-condition: eta - 16(r - eta) = 0.15 r at r = 1.5
    CHECK(report.steps[1].margin == doctest::Approx(0.15 * 1.5).epsilon(1e-9));
    // constant facts, frozen from exact evaluation
    CHECK(report.steps[4].margin == doctest::Approx(0.0554344).epsilon(1e-4));   // -7.7 - c1
    CHECK(report.steps[5].margin == doctest::Approx(0.1256643).epsilon(1e-4));   // 5.8 r^8 gap
    CHECK(report.steps[6].margin == doctest::Approx(0.0060719).epsilon(1e-3));   // 7 - c3
    CHECK(report.steps[7].margin == doctest::Approx(1.9 * std::pow(1.5, 8) - 7.0).epsilon(1e-9));
}

TEST_CASE("table 1 rows") {
    struct Row {
        double beta, d_published, fr_published, root_ref;
    };
    // root_ref: mpmath, 40 digits
    const Row rows[] = {
        {0.0, 0.80719, 1.37891, 0.8071906797},
        {0.001, 0.80726, 1.37872, 0.8072658919},
        {0.00201, 0.80739, 1.37838, 0.8073988399},
        {0.005, 0.80796, 1.37694, 0.8079628141},
        {0.01, 0.80924, 1.37368, 0.809241944},
        {0.05, 0.82508, 1.33429, 0.8250876646},
        {0.09, 0.84498, 1.28744, 0.8449863914},
    };
    double prev_fr = 10.0;
    for (const auto& row : rows) {
        const auto bound = case_moderate::moderate_bound(row.beta);
        INFO("beta = " << row.beta);
        CHECK(bound.root.x == doctest::Approx(row.root_ref).epsilon(1e-8));
        CHECK(std::fabs(bound.d_lower - row.d_published) <= 1e-4);
        CHECK(std::fabs(bound.fr_upper - row.fr_published) <= 1.5e-4);
        CHECK(bound.fr_upper >= core::froude(bound.d_lower));
        CHECK(bound.fr_upper <= prev_fr + 1e-12);  // non-increasing in beta
        prev_fr = bound.fr_upper;
    }
}

TEST_CASE("moderate_bound rejects beta outside [0, 0.09]") {
    CHECK_THROWS_AS(case_moderate::moderate_bound(-0.001), std::domain_error);
    CHECK_THROWS_AS(case_moderate::moderate_bound(0.10), std::domain_error);
}
