#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "froude/core.hpp"
#include "froude/numerics.hpp"

// Moderate distance from stagnation: 0.95 r < eta_hat <= (1 - beta) r.
// The flow force is bounded below by J(eta, r) = 1/(2 eta) + r eta -
// eta^2/2 + J1 + J2, where J1 and J2 are closed forms of the two
// velocity-defect integrals over [y1, eta], y1 = r - 1/(2 eta^2).

namespace froude::case_moderate {

double j1(double eta_hat, double r);
double j2(double eta_hat, double r);

struct ModerateEval {
    double eta_hat = 0.0;
    double r = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double j_total = 0.0;
    double y1_mod = 0.0;   // r - 1/(2 eta^2), below eta on the admissible range
};

ModerateEval j_total(double eta_hat, double r);

/// Closed-form d/d(eta) of j_total (hand-derived, finite-difference
/// validated). At eta = r equals -1/(18 r^5 (2r^3 - 1)^2) exactly.
double dj_dhat(double eta_hat, double r);

/// Default certification region: r in [1.5, 1.5875], eta in [1.4, r].
numerics::GridSpec default_monotone_region(int nx = 1500, int ny = 1500);

/// Certifies dJ/d(eta) < 0 over the triangular region. Cells with
/// eta > r are skipped and the eta = r edge is folded in per column via
/// the crest limit, which is where the surface attains its maximum.
numerics::GridCertificate verify_monotone(const numerics::GridSpec& region,
                                          int workers = 1);
numerics::GridCertificate verify_monotone();

/// Grid export of the derivative surface: header `r,eta_hat,dJ_deta`,
/// row-major over r then eta, rows with eta > r omitted.
void write_figure_csv(std::ostream& os, int nx, int ny, int workers = 1);

// ---------------------------------------------------------------------------
// Algebraic verification chain for dJ/d(eta) < 0 on eta in [0.95 r, r],
// r in [1.5, 4^(1/3)]: a factored identity, term-by-term bounds that are
// monotone by 2k(r - eta) < eta, and a final one-variable polynomial fact.

struct ChainStep {
    std::string name;
    bool ok = false;
    double margin = 0.0;
    double worst_r = 0.0;
    double worst_eta = 0.0;
    std::string detail;
};

struct ChainReport {
    bool ok = false;
    std::vector<ChainStep> steps;
};

ChainReport verify_chain(int grid_n, int workers = 1);

/// Bound for eta_hat <= (1 - beta) r: solves flow_force(d) =
/// J((1 - beta) r(d), r(d)) on [0.75, 0.9999]. beta in [0, 0.09].
core::CaseBound moderate_bound(double beta);

}  // namespace froude::case_moderate
