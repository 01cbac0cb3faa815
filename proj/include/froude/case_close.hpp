#pragma once

#include <string>
#include <vector>

#include "froude/core.hpp"

// Close to stagnation: eta_hat > (1 - beta) r, beta <= 0.05. The velocity
// below the crest is enveloped by phi(y) = sqrt(2(r-y)) (1 - A(r-y)/2)
// with A(s) = c (s^(3/2) - (beta r)^(3/2)) / s, where c carries the bottom
// velocity bound sqrt(2(S/r - r/2)). The resulting flow-force bound
// Jbar(d, beta) is evaluated both by closed-form antiderivatives and by
// adaptive quadrature, which must agree.

namespace froude::case_close {

struct CloseParams {
    double d = 0.0;
    double r = 0.0;
    double S = 0.0;
    double beta = 0.0;
    double c = 0.0;     // 2 d sqrt(2(S/r - r/2)) / (3 sqrt(r))
    double b = 0.0;     // beta * r
    double y1c = 0.0;   // NaN when beta >= 1/(2r^3) or the estimate degenerates

    static CloseParams make(double d, double beta);
};

/// A(s) for s >= beta * r; zero at s = beta * r, reduces to c sqrt(s)
/// when beta = 0.
double coef_A(double s, const CloseParams& p);

/// Velocity envelope on [0, (1 - beta) r].
double phi(double y, const CloseParams& p);

/// y1 = r - (1/(2r^2)) (1 - A((2r^2)^(-1))/2)^(-2); throws when A >= 2
/// at the reference point (degenerate estimate).
double y1_close(const CloseParams& p);

struct FeasibilityCheck {
    std::string name;
    bool ok = false;
    double margin = 0.0;
};

struct FeasibilityReport {
    bool ok = false;
    std::vector<FeasibilityCheck> checks;
};

/// (a) beta < 1/(2r^3); (b) y1 < (1-beta) r; (c) phi < 1/r on 1000 samples
/// of [y1, (1-beta) r]; (d) phi((1-beta) r) < 1/r exactly. Returns the
/// failure list instead of throwing.
FeasibilityReport feasibility(const CloseParams& p);

/// Jbar evaluated from explicit params (test hook for degenerate probes).
double jbar_value(const CloseParams& p);

/// Jbar(d, beta) = r^2/2 + 1/(2r) + (integral bound terms). Closed form
/// and quadrature oracle are both computed; disagreement beyond 1e-8 is an
/// internal-consistency error and the closed form is returned otherwise.
double jbar(double d, double beta);

/// Bound for eta_hat > (1 - beta) r: solves flow_force(d) = jbar(d, beta)
/// on [0.75, 0.9999]. beta in [0, 0.05]; beta = 0 is the extreme wave.
core::CaseBound close_bound(double beta);

}  // namespace froude::case_close
