#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "froude/case_close.hpp"
#include "froude/case_far.hpp"
#include "froude/case_moderate.hpp"
#include "froude/core.hpp"
#include "froude/numerics.hpp"

// Assembles the full proof pipeline: tables, certifications, the beta
// interpolation between the moderate and close cases, and the final
// theorem report. All outputs are deterministic: fixed tolerances, fixed
// decimal formatting, no clocks or locale.

namespace froude::pipeline {

inline constexpr const char* kToolVersion = "froudebound 1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Tolerances pinned across the pipeline (also echoed in reports).
struct Tolerances {
    double root_tol = 1e-12;
    double quad_tol = 1e-12;
    double beta_tol = 1e-6;
    double fr_final_max = 1.37845;  // exit gate for the theorem report
};

// ---------------------------------------------------------------------------
// Tables

struct TableRow {
    double beta = 0.0;
    bool solved = false;
    core::CaseBound bound;
    std::string error;
};

std::vector<double> default_table1_betas();  // {0 ... 0.09}
std::vector<double> default_table2_betas();  // {0, 0.001, 0.00201}

std::vector<TableRow> build_table1(const std::vector<double>& betas);
std::vector<TableRow> build_table2(const std::vector<double>& betas);

/// CSV with header exactly `beta,d_lower,fr_upper,residual` per table.
void write_tables_csv(std::ostream& os, const std::vector<TableRow>& t1,
                      const std::vector<TableRow>& t2);
std::string tables_json(const std::vector<TableRow>& t1,
                        const std::vector<TableRow>& t2);

// ---------------------------------------------------------------------------
// Beta interpolation

struct OptimizeResult {
    double beta_star = 0.0;
    double fr_star = 0.0;        // max of the two case bounds at beta_star
    core::CaseBound moderate;
    core::CaseBound close;
    double delta_left = 0.0;     // raw Froude difference at the bracket ends
    double delta_right = 0.0;
    int iterations = 0;
};

struct OptimizeBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bisects the crossing of the close and moderate bounds over beta in
/// [1e-5, 0.01]. The bisection runs on the unrounded Froude values at the
/// case roots; the reported bounds carry the usual conservative rounding.
OptimizeResult optimize_beta(double tol_beta = 1e-6);

std::string optimize_json(const OptimizeResult& result);
void write_optimize_text(std::ostream& os, const OptimizeResult& result);

// ---------------------------------------------------------------------------
// Theorem report

struct TheoremConfig {
    std::optional<double> forced_beta;  // skip optimization when set
    double far_theta = 0.95;            // exposed for exploration only
    int monotone_nx = 1500;
    int monotone_ny = 1500;
    int chain_n = 500;
    int lemma_n = 10000;
    double tol_beta = 1e-6;
    int workers = 1;
};

struct TheoremReport {
    core::CaseBound far;
    core::CaseBound moderate_at_beta;
    core::CaseBound close_at_beta;
    double beta_star = 0.0;
    double fr_final = 0.0;
    numerics::GridCertificate monotone;
    case_moderate::ChainReport chain;
    core::LemmaConstantsReport lemma;
    case_close::FeasibilityReport feasibility;
    bool certificates_ok = false;
    bool pass = false;
    Tolerances tolerances;
    std::string tool_version = kToolVersion;
};

TheoremReport run_theorem(const TheoremConfig& cfg = {});
std::string theorem_json(const TheoremReport& report);
void write_theorem_text(std::ostream& os, const TheoremReport& report);

// ---------------------------------------------------------------------------
// Standalone verification (certificates only)

struct VerifyReport {
    numerics::GridCertificate monotone;
    case_moderate::ChainReport chain;
    core::LemmaConstantsReport lemma;
    case_close::FeasibilityReport feasibility;  // at the beta = 0.00201 state
    bool ok = false;
};

VerifyReport run_verify(int monotone_nx = 1500, int monotone_ny = 1500,
                        int chain_n = 500, int lemma_n = 10000,
                        int workers = 1);
std::string verify_json(const VerifyReport& report);
void write_verify_text(std::ostream& os, const VerifyReport& report);

}  // namespace froude::pipeline
