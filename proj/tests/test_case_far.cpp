#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "froude/case_far.hpp"

using namespace froude;

TEST_CASE("far bound at the published crest fraction") {
    const auto bound = case_far::far_case_bound(0.95);
    CHECK(bound.case_id == core::CaseId::far);
    CHECK(bound.theta == doctest::Approx(0.95));
    // high-precision root 0.820625924509 (mpmath)
    CHECK(bound.root.x == doctest::Approx(0.820625924509).epsilon(1e-9));
    CHECK(bound.d_lower == doctest::Approx(0.82062).epsilon(1e-12));
    CHECK(std::fabs(bound.d_lower - 0.82062) <= 1e-4);   // published
    CHECK(std::fabs(bound.fr_upper - 1.34521) <= 1e-4);  // published
    CHECK(bound.fr_upper >= core::froude(bound.d_lower));
    CHECK(std::fabs(bound.root.residual) <= 1e-10);
}

TEST_CASE("far bound at theta = 1 recovers the sqrt(2) endpoint exactly") {
    const auto bound = case_far::far_case_bound(1.0);
    const double cbrt_half = std::pow(2.0, -1.0 / 3.0);
    CHECK(std::fabs(bound.root.x - cbrt_half) <= 1e-9);
    CHECK(std::fabs(core::froude(bound.root.x) - std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("far bound at the lemma crest fraction 0.928") {
    const auto bound = case_far::far_case_bound(0.928);
    CHECK(bound.root.x == doctest::Approx(0.832796589227).epsilon(1e-9));
    CHECK(std::fabs(bound.root.x - 0.8327) <= 1e-4);  // printed threshold
}

TEST_CASE("far bound is monotone in theta") {
    double prev_d = 1.0;
    for (double theta : {0.90, 0.92, 0.95, 0.97, 1.0}) {
        const auto bound = case_far::far_case_bound(theta);
        // smaller crest allowance gives the stronger depth bound
        CHECK(bound.d_lower <= prev_d + 1e-12);
        prev_d = bound.d_lower;
    }
}

TEST_CASE("far residual consistency at the root") {
    const auto bound = case_far::far_case_bound(0.95);
    const double d = bound.root.x;
    const double r = core::bernoulli_from_depth(d);
    CHECK(std::fabs(core::flow_force(d) - core::script_S(0.95 * r, r)) <= 1e-10);
}

TEST_CASE("far bound rejects bad theta") {
    CHECK_THROWS_AS(case_far::far_case_bound(0.0), std::domain_error);
    CHECK_THROWS_AS(case_far::far_case_bound(1.2), std::domain_error);
    CHECK_THROWS_AS(case_far::far_case_bound(-0.95), std::domain_error);
}
