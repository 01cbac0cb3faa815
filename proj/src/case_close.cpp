#include "froude/case_close.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "froude/numerics.hpp"

namespace froude::case_close {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kBracketLo = 0.75;
constexpr double kBracketHi = 0.9999;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

CloseParams CloseParams::make(double d, double beta) {
    if (!(d > 0.0) || !(d <= 1.0) || !std::isfinite(d)) {
        throw std::domain_error("close case: depth must lie in (0, 1]");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("close case: beta must be non-negative");
    }
    CloseParams p;
    p.d = d;
    p.beta = beta;
    p.r = core::bernoulli_from_depth(d);
    p.S = core::flow_force(d);
    const double head = p.S / p.r - 0.5 * p.r;  // positive iff Fr < sqrt(2) algebra holds
    if (!(head > 0.0)) {
        throw std::domain_error("close case: S/r - r/2 not positive at this depth");
    }
    p.c = 2.0 * d * std::sqrt(2.0 * head) / (3.0 * std::sqrt(p.r));
    p.b = beta * p.r;
    const double s0 = 0.5 / (p.r * p.r);
    if (p.b < s0) {
        const double a0 = coef_A(s0, p);
        p.y1c = a0 < 2.0 ? p.r - s0 / ((1.0 - 0.5 * a0) * (1.0 - 0.5 * a0)) : nan_value();
    } else {
        p.y1c = nan_value();  // beta >= 1/(2r^3); feasibility (a) reports it
    }
    return p;
}

double coef_A(double s, const CloseParams& p) {
    if (!(s > 0.0) || s < p.b - 1e-15) {
        throw std::domain_error("coef_A: need s >= beta r and s > 0");
    }
    return p.c * (s * std::sqrt(s) - p.b * std::sqrt(p.b)) / s;
}

double phi(double y, const CloseParams& p) {
    const double upper = (1.0 - p.beta) * p.r;
    if (y < -1e-12 || y > upper + 1e-12 * p.r) {
        throw std::domain_error("phi: y outside [0, (1-beta) r]");
    }
    const double s = p.r - y;
    if (s <= 0.0) return 0.0;  // y = r endpoint of the extreme wave (beta = 0)
    return std::sqrt(2.0 * s) * (1.0 - 0.5 * coef_A(s, p));
}

double y1_close(const CloseParams& p) {
    const double s0 = 0.5 / (p.r * p.r);
    const double a0 = coef_A(s0, p);
    if (a0 >= 2.0) {
        throw std::runtime_error("y1_close: degenerate estimate, A >= 2 at the reference point");
    }
    return p.r - s0 / ((1.0 - 0.5 * a0) * (1.0 - 0.5 * a0));
}

FeasibilityReport feasibility(const CloseParams& p) {
    FeasibilityReport report;
    const double upper = (1.0 - p.beta) * p.r;
    const double inv_r = 1.0 / p.r;
    const double r3 = p.r * p.r * p.r;

    {
        FeasibilityCheck c;
        c.name = "a: beta < 1/(2 r^3)";
        c.margin = 0.5 / r3 - p.beta;
        c.ok = c.margin > 0.0;
        report.checks.push_back(c);
    }
    {
        FeasibilityCheck c;
        c.name = "b: y1 < (1 - beta) r";
        if (std::isfinite(p.y1c)) {
            c.margin = upper - p.y1c;
            c.ok = c.margin > 0.0;
        } else {
            c.margin = -std::numeric_limits<double>::infinity();
            c.ok = false;
        }
        report.checks.push_back(c);
    }
    {
        FeasibilityCheck c;
        c.name = "c: phi(y) < 1/r on [y1, (1 - beta) r], 1000 samples";
        if (std::isfinite(p.y1c) && p.y1c < upper) {
            double min_margin = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 1000; ++i) {
                const double y = p.y1c + (upper - p.y1c) * i / 1000.0;
                min_margin = std::min(min_margin, inv_r - phi(y, p));
            }
            c.margin = min_margin;
            // the degenerate A = 0 envelope touches 1/r exactly at y1
            c.ok = min_margin > -1e-13;
        } else {
            c.margin = -std::numeric_limits<double>::infinity();
            c.ok = false;
        }
        report.checks.push_back(c);
    }
    {
        FeasibilityCheck c;
        c.name = "d: phi((1 - beta) r) < 1/r";
        c.margin = inv_r - std::sqrt(2.0 * p.b);
        c.ok = c.margin > 0.0;
        report.checks.push_back(c);
    }

    report.ok = true;
    for (const auto& c : report.checks) report.ok = report.ok && c.ok;
    return report;
}

namespace {

// Antiderivatives of g(s) = 1/r - phi in s = r - y, where
// g = a0 + a1 sqrt(s) + a2 s + a3 / sqrt(s).
struct Antiderivative {
    double a0, a1, a2, a3;

    double integral_g(double s) const {
        const double sq = std::sqrt(s);
        return a0 * s + a1 * (2.0 / 3.0) * s * sq + a2 * 0.5 * s * s + a3 * 2.0 * sq;
    }
    double integral_g2(double s) const {
        const double sq = std::sqrt(s);
        double v = (a0 * a0 + 2.0 * a1 * a3) * s +
                   (2.0 * a0 * a1 + 2.0 * a2 * a3) * (2.0 / 3.0) * s * sq +
                   (a1 * a1 + 2.0 * a0 * a2) * 0.5 * s * s +
                   2.0 * a1 * a2 * (2.0 / 5.0) * s * s * sq +
                   a2 * a2 * s * s * s / 3.0 + 4.0 * a0 * a3 * sq;
        if (a3 != 0.0) v += a3 * a3 * std::log(s);  // absent when beta = 0
        return v;
    }
};

}  // namespace

double jbar_value(const CloseParams& p) {
    const auto feas = feasibility(p);
    if (!feas.ok) {
        throw std::domain_error("jbar: close-case estimate infeasible for this (d, beta)");
    }
    const double upper = (1.0 - p.beta) * p.r;
    const double s1 = p.r - p.y1c;
    const double head = 0.5 * p.r * p.r + 0.5 / p.r;

    Antiderivative anti;
    anti.a0 = 1.0 / p.r;
    anti.a1 = -kSqrt2;
    anti.a2 = p.c / kSqrt2;
    anti.a3 = -p.c * p.b * std::sqrt(p.b) / kSqrt2;

    const double closed_i = anti.integral_g(s1) - anti.integral_g(p.b);
    const double closed_i2 = anti.integral_g2(s1) - anti.integral_g2(p.b);

    // Independent route: the same integrals by adaptive quadrature in y.
    const auto defect = [&p](double y) { return 1.0 / p.r - phi(y, p); };
    const double quad_i = numerics::integrate_adaptive(defect, p.y1c, upper, 1e-12);
    const double quad_i2 = numerics::integrate_adaptive(
        [&defect](double y) {
            const double g = defect(y);
            return g * g;
        },
        p.y1c, upper, 1e-12);
    if (std::fabs(closed_i - quad_i) > 1e-8 || std::fabs(closed_i2 - quad_i2) > 1e-8) {
        throw std::logic_error("jbar: closed form and quadrature oracle disagree");
    }

    return head + closed_i * closed_i / (2.0 * p.y1c) + 0.5 * closed_i2;
}

double jbar(double d, double beta) { return jbar_value(CloseParams::make(d, beta)); }

namespace {

double close_residual(double d, double beta) {
    return core::flow_force(d) - jbar(d, beta);
}

}  // namespace

core::CaseBound close_bound(double beta) {
    if (!(beta >= 0.0) || beta > 0.05 || !std::isfinite(beta)) {
        throw std::domain_error("close_bound: beta must lie in [0, 0.05]");
    }
    const auto root = numerics::find_root(
        [beta](double d) { return close_residual(d, beta); }, kBracketLo, kBracketHi, 1e-12);
    const double step = 2e-4;
    for (int i = 1; i <= 5; ++i) {
        const double below = root.x - i * step;
        const double above = root.x + i * step;
        if (below > kBracketLo && close_residual(below, beta) >= 0.0) {
            throw std::runtime_error("close_bound: sign pattern violated below the root");
        }
        if (above < kBracketHi && close_residual(above, beta) <= 0.0) {
            throw std::runtime_error("close_bound: sign pattern violated above the root");
        }
    }
    return core::make_case_bound(core::CaseId::close, beta, 0.95, root);
}

}  // namespace froude::case_close
