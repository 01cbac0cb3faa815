#pragma once

#include <string>
#include <vector>

#include "froude/numerics.hpp"

// Fundamental one-dimensional stream relations. With mass flux and gravity
// scaled to one, a uniform stream of depth d has Bernoulli constant
// r = 1/(2d^2) + d, flow force S = d^2/2 + 1/d and Froude number d^(-3/2).
// Solitary waves live on the supercritical branch d < 1 with
// r in (1.5, 4^(1/3)).

namespace froude::core {

double bernoulli_from_depth(double d);
double flow_force(double d);
double froude(double d);

/// Comparison function S(t) = r t - t^2/2 + 1/(2t): the Cauchy-Schwarz
/// lower envelope of the flow force below the crest. Its derivative
/// vanishes exactly at the two conjugate depths of r.
double script_S(double t, double r);
double script_S_derivative(double t, double r);

struct StreamState {
    double d = 0.0;
    double r = 0.0;
    double S = 0.0;
    double fr = 0.0;

    static StreamState from_depth(double d);
    bool solitary() const { return d < 1.0; }
};

/// The two positive roots of 2d^3 - 2rd^2 + 1 = 0, d_minus <= 1 <= d_plus.
struct ConjugatePair {
    double d_minus = 0.0;
    double d_plus = 0.0;
};

/// Conjugate depths for r >= 1.5. At r = 1.5 returns the double root (1, 1).
/// Bracketed bisection on (0, 1] and [1, r] with Newton polish; residual of
/// each root is below 1e-12.
ConjugatePair conjugate_depths(double r);

/// Slack of Starr's inequality: 1 + (eta_hat - d)/d - Fr(d)^2. Positive for
/// genuine solitary states; zero at the critical stream and at the
/// Fr = sqrt(2) endpoint. Requires d_plus <= eta_hat <= r.
double starr_check(double d, double eta_hat);

// ---------------------------------------------------------------------------
// Conservative rounding for reported bounds: depth bounds round down,
// Froude bounds round up, so a printed pair never claims more than proven.

double round_down_decimals(double x, int decimals);
double round_up_decimals(double x, int decimals);

// ---------------------------------------------------------------------------
// Case bounds

enum class CaseId { far, moderate, close };

const char* case_name(CaseId id);

struct CaseBound {
    CaseId case_id = CaseId::far;
    double beta = 0.0;        // unused for the far case
    double theta = 0.95;      // far-case crest fraction
    double d_lower = 0.0;     // rounded down to 5 decimals
    double fr_upper = 0.0;    // round-up-5 of froude(d_lower)
    numerics::RootResult root;
};

/// Applies the rounding policy to a solved root. fr_upper is evaluated at
/// the rounded-down depth, which makes fr_upper >= d_lower^(-3/2) hold by
/// construction.
CaseBound make_case_bound(CaseId id, double beta, double theta,
                          const numerics::RootResult& root);

// ---------------------------------------------------------------------------
// Scalar constants from the surface-slope lemma

struct LemmaCheck {
    std::string name;
    bool ok = false;
    double value = 0.0;      // computed quantity
    double reference = 0.0;  // printed constant it is compared against
    double margin = 0.0;
    std::string note;
};

struct LemmaConstantsReport {
    bool ok = false;
    std::vector<LemmaCheck> checks;
};

/// Re-derives every scalar constant used in the slope-lemma contradiction:
/// (a) 2/(1 + 0.60442942^2) >= 1.46484, (b) sqrt(2*0.46484) >= 0.9641,
/// (c) the root of 0.9641 sqrt(r(d)) d = 1 near 0.83197, (d) the root of
/// S(d) = script_S(0.928 r, r) near 0.8327, and (e) S(d) < 1.46484 *
/// (0.928 - 0.430592) * r(d)^2 on a grid over (0, 1]. grid_n >= 100.
LemmaConstantsReport verify_lemma_constants(int grid_n);

}  // namespace froude::core
