#include "froude/case_far.hpp"

#include <cmath>
#include <stdexcept>

#include "froude/numerics.hpp"

namespace froude::case_far {

namespace {

constexpr double kBracketLo = 0.75;
constexpr double kBracketHi = 0.9999;

double residual(double d, double theta) {
    const double r = core::bernoulli_from_depth(d);
    return core::flow_force(d) - core::script_S(theta * r, r);
}

// The inequality S > script_S(theta r) must fail below the root and hold
// above it; five samples each side guard against picking a spurious crossing.
void validate_direction(double root, double theta) {
    const double step = 2e-4;
    for (int i = 1; i <= 5; ++i) {
        const double below = root - i * step;
        const double above = root + i * step;
        if (below > kBracketLo && residual(below, theta) >= 0.0) {
            throw std::runtime_error("far_case_bound: sign pattern violated below the root");
        }
        if (above < kBracketHi && residual(above, theta) <= 0.0) {
            throw std::runtime_error("far_case_bound: sign pattern violated above the root");
        }
    }
}

}  // namespace

core::CaseBound far_case_bound(double theta) {
    if (!(theta > 0.0) || theta > 1.0 || !std::isfinite(theta)) {
        throw std::domain_error("far_case_bound: theta must lie in (0, 1]");
    }
    const auto root = numerics::find_root(
        [theta](double d) { return residual(d, theta); }, kBracketLo, kBracketHi, 1e-12);
    validate_direction(root.x, theta);
    return core::make_case_bound(core::CaseId::far, 0.0, theta, root);
}

}  // namespace froude::case_far
