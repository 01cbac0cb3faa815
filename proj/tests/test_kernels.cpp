#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "froude/core.hpp"
#include "froude/kernels.hpp"

using namespace froude;

namespace {

struct BackendGuard {
    kernels::Backend saved;
    BackendGuard() : saved(kernels::active_backend()) {}
    ~BackendGuard() { kernels::set_backend(saved); }
};

std::vector<double> sample_etas(double r, int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(1.4, r - 1e-6);
    std::vector<double> etas(n);
    for (auto& e : etas) e = u(rng);
    return etas;
}

}  // namespace

TEST_CASE("dj_deta matches high-precision references") {
    // mpmath, 40 digits
    CHECK(kernels::dj_deta(1.5, 1.55) ==
          doctest::Approx(-0.117210757273557).epsilon(1e-13));
    CHECK(kernels::dj_deta(1.45, 1.52) ==
          doctest::Approx(-0.125063329510843).epsilon(1e-13));
    CHECK(kernels::dj_deta(1.4, 1.5875) ==
          doctest::Approx(-0.0639527218154589).epsilon(1e-13));
}

TEST_CASE("crest limit") {
    const double r = 1.55;
    const double closed = -1.0 / (18.0 * std::pow(r, 5) * std::pow(1.0 - 2.0 * r * r * r, 2));
    CHECK(kernels::dj_deta_crest(r) == doctest::Approx(closed).epsilon(1e-15));
    CHECK(kernels::dj_deta_crest(r) == doctest::Approx(-0.000149366300241899).epsilon(1e-13));
    // the row/point evaluator folds onto the limit at eta = r
    CHECK(kernels::dj_deta(r, r) == kernels::dj_deta_crest(r));
    // single-value probe at the critical constant
    const double r0 = 1.5;
    CHECK(kernels::dj_deta(r0, r0) ==
          doctest::Approx(-1.0 / (18.0 * std::pow(r0, 5) * std::pow(1 - 2 * std::pow(r0, 3), 2)))
              .epsilon(1e-15));
}

TEST_CASE("dj_deta domain") {
    CHECK_THROWS_AS(kernels::dj_deta(1.6, 1.55), std::domain_error);
    CHECK_THROWS_AS(kernels::dj_deta(-1.0, 1.55), std::domain_error);
    CHECK_THROWS_AS(kernels::dj_deta(0.1, 1.55), std::domain_error);  // 2 r eta^2 <= 1
}

TEST_CASE("row kernel equals the pointwise evaluator") {
    const double r = 1.57;
    auto etas = sample_etas(r, 257, 42);
    etas.push_back(r);            // crest lane inside the row
    etas.push_back(r - 1e-12);    // crest band lane
    std::vector<double> out(etas.size());
    kernels::dj_deta_row(r, etas.data(), out.data(), etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        REQUIRE(out[i] == kernels::dj_deta(etas[i], r));
    }
}

TEST_CASE("scalar and AVX2 rows agree") {
    if (!kernels::backend_supported(kernels::Backend::avx2)) {
        MESSAGE("AVX2 not available on this host; dispatch falls back to scalar");
        return;
    }
    BackendGuard guard;
    const double r = 1.5612;
    const auto etas = sample_etas(r, 1003, 7);
    std::vector<double> scalar_out(etas.size()), avx2_out(etas.size());

    kernels::set_backend(kernels::Backend::scalar);
    kernels::dj_deta_row(r, etas.data(), scalar_out.data(), etas.size());
    kernels::set_backend(kernels::Backend::avx2);
    kernels::dj_deta_row(r, etas.data(), avx2_out.data(), etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        REQUIRE(avx2_out[i] == scalar_out[i]);  // same op order, contraction off
    }

    std::vector<double> depths(777);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.5, 1.0);
    for (auto& d : depths) d = u(rng);
    std::vector<double> a(depths.size()), b(depths.size());
    kernels::set_backend(kernels::Backend::scalar);
    kernels::bernoulli_row(depths.data(), a.data(), depths.size());
    kernels::set_backend(kernels::Backend::avx2);
    kernels::bernoulli_row(depths.data(), b.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) REQUIRE(a[i] == b[i]);

    kernels::set_backend(kernels::Backend::scalar);
    kernels::flow_force_row(depths.data(), a.data(), depths.size());
    kernels::set_backend(kernels::Backend::avx2);
    kernels::flow_force_row(depths.data(), b.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) REQUIRE(a[i] == b[i]);

    kernels::set_backend(kernels::Backend::scalar);
    kernels::froude_row(depths.data(), a.data(), depths.size());
    kernels::set_backend(kernels::Backend::avx2);
    kernels::froude_row(depths.data(), b.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("stream rows match the core relations") {
    std::vector<double> depths = {0.75, 0.7937005259840997, 0.80719, 0.82062, 0.9, 1.0};
    std::vector<double> out(depths.size());

    kernels::bernoulli_row(depths.data(), out.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) {
        REQUIRE(out[i] == doctest::Approx(core::bernoulli_from_depth(depths[i])).epsilon(1e-15));
    }
    kernels::flow_force_row(depths.data(), out.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) {
        REQUIRE(out[i] == doctest::Approx(core::flow_force(depths[i])).epsilon(1e-15));
    }
    kernels::froude_row(depths.data(), out.data(), depths.size());
    for (std::size_t i = 0; i < depths.size(); ++i) {
        REQUIRE(out[i] == doctest::Approx(core::froude(depths[i])).epsilon(1e-15));
    }
}

TEST_CASE("backend dispatch") {
    BackendGuard guard;
    CHECK(kernels::backend_supported(kernels::Backend::scalar));
    kernels::set_backend(kernels::Backend::scalar);
    CHECK(kernels::active_backend() == kernels::Backend::scalar);
    kernels::set_backend(kernels::Backend::avx2);
    if (kernels::backend_supported(kernels::Backend::avx2)) {
        CHECK(kernels::active_backend() == kernels::Backend::avx2);
    } else {
        CHECK(kernels::active_backend() == kernels::Backend::scalar);  // silent fallback
    }
    CHECK(std::string(kernels::backend_name(kernels::Backend::scalar)) == "scalar");
    CHECK(std::string(kernels::backend_name(kernels::Backend::avx2)) == "avx2");
}
