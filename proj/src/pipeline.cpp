#include "froude/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace froude::pipeline {

using nlohmann::json;

std::vector<double> default_table1_betas() {
    return {0.0, 0.001, 0.00201, 0.005, 0.01, 0.05, 0.09};
}

std::vector<double> default_table2_betas() { return {0.0, 0.001, 0.00201}; }

namespace {

std::vector<TableRow> build_rows(const std::vector<double>& betas,
                                 core::CaseBound (*solver)(double)) {
    std::vector<TableRow> rows;
    rows.reserve(betas.size());
    for (double beta : betas) {
        TableRow row;
        row.beta = beta;
        try {
            row.bound = solver(beta);
            row.solved = true;
        } catch (const std::exception& e) {
            row.solved = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_rows_csv(std::ostream& os, const std::vector<TableRow>& rows) {
    os << "beta,d_lower,fr_upper,residual\n";
    char line[128];
    for (const auto& row : rows) {
        if (row.solved) {
            std::snprintf(line, sizeof line, "%.5f,%.5f,%.5f,%.3e\n", row.beta,
                          row.bound.d_lower, row.bound.fr_upper, row.bound.root.residual);
            os << line;
        } else {
            std::snprintf(line, sizeof line, "# error beta=%.5f: ", row.beta);
            os << line << row.error << "\n";
        }
    }
}

json bound_json(const core::CaseBound& b) {
    return json{{"case", core::case_name(b.case_id)},
                {"beta", b.beta},
                {"theta", b.theta},
                {"d_lower", b.d_lower},
                {"fr_upper", b.fr_upper},
                {"root",
                 {{"x", b.root.x},
                  {"residual", b.root.residual},
                  {"iterations", b.root.iterations},
                  {"bracket", {b.root.bracket.lo, b.root.bracket.hi}},
                  {"unique_sign_change", b.root.unique_sign_change}}}};
}

json rows_json(const std::vector<TableRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        if (row.solved) {
            arr.push_back(bound_json(row.bound));
        } else {
            arr.push_back(json{{"beta", row.beta}, {"error", row.error}});
        }
    }
    return arr;
}

json certificate_json(const numerics::GridCertificate& cert) {
    return json{{"max_value", cert.max_value},
                {"worst_cell", {cert.worst_x, cert.worst_y}},
                {"margin", cert.margin},
                {"rigor", cert.rigor == numerics::Rigor::sampled ? "sampled" : "chain-analytic"},
                {"nx", cert.region.nx},
                {"ny", cert.region.ny},
                {"evaluated", cert.evaluated},
                {"passed", cert.passed()}};
}

json chain_json(const case_moderate::ChainReport& chain) {
    json steps = json::array();
    for (const auto& st : chain.steps) {
        steps.push_back(json{{"name", st.name},
                             {"ok", st.ok},
                             {"margin", st.margin},
                             {"worst_r", st.worst_r},
                             {"worst_eta", st.worst_eta},
                             {"detail", st.detail}});
    }
    return json{{"ok", chain.ok}, {"rigor", "chain-analytic"}, {"steps", steps}};
}

json lemma_json(const core::LemmaConstantsReport& lemma) {
    json checks = json::array();
    for (const auto& c : lemma.checks) {
        checks.push_back(json{{"name", c.name},
                              {"ok", c.ok},
                              {"value", c.value},
                              {"reference", c.reference},
                              {"margin", c.margin},
                              {"note", c.note}});
    }
    return json{{"ok", lemma.ok}, {"checks", checks}};
}

json feasibility_json(const case_close::FeasibilityReport& feas) {
    json checks = json::array();
    for (const auto& c : feas.checks) {
        checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"margin", c.margin}});
    }
    return json{{"ok", feas.ok}, {"checks", checks}};
}

json tolerances_json(const Tolerances& tol) {
    return json{{"root_tol", tol.root_tol},
                {"quad_tol", tol.quad_tol},
                {"beta_tol", tol.beta_tol},
                {"fr_final_max", tol.fr_final_max}};
}

}  // namespace

std::vector<TableRow> build_table1(const std::vector<double>& betas) {
    return build_rows(betas, &case_moderate::moderate_bound);
}

std::vector<TableRow> build_table2(const std::vector<double>& betas) {
    return build_rows(betas, &case_close::close_bound);
}

void write_tables_csv(std::ostream& os, const std::vector<TableRow>& t1,
                      const std::vector<TableRow>& t2) {
    os << "# moderate case: S >= J((1-beta) r, r)\n";
    write_rows_csv(os, t1);
    os << "# close case: S >= Jbar(d, beta)\n";
    write_rows_csv(os, t2);
}

std::string tables_json(const std::vector<TableRow>& t1, const std::vector<TableRow>& t2) {
    json doc{{"schema_version", kSchemaVersion},
             {"tool_version", kToolVersion},
             {"table1", rows_json(t1)},
             {"table2", rows_json(t2)}};
    return doc.dump(2) + "\n";
}

OptimizeResult optimize_beta(double tol_beta) {
    if (!(tol_beta >= 1e-7) || !(tol_beta <= 1e-3)) {
        throw std::invalid_argument("optimize_beta: tol_beta must lie in [1e-7, 1e-3]");
    }
    // The crossing is bisected on the unrounded Froude values at the case
    // roots; plateaus of the rounded bounds would otherwise smear beta*.
    const auto raw_delta = [](double beta) {
        const auto mod = case_moderate::moderate_bound(beta);
        const auto cls = case_close::close_bound(beta);
        return core::froude(cls.root.x) - core::froude(mod.root.x);
    };
    double lo = 1e-5, hi = 0.01;
    OptimizeResult result;
    result.delta_left = raw_delta(lo);
    result.delta_right = raw_delta(hi);
    if (!(result.delta_left < 0.0) || !(result.delta_right > 0.0)) {
        throw OptimizeBracketError("optimize_beta: close-moderate difference does not change sign on [1e-5, 0.01]");
    }
    while (hi - lo > tol_beta) {
        const double mid = 0.5 * (lo + hi);
        ++result.iterations;
        if (raw_delta(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.beta_star = 0.5 * (lo + hi);
    result.moderate = case_moderate::moderate_bound(result.beta_star);
    result.close = case_close::close_bound(result.beta_star);
    result.fr_star = std::max(result.moderate.fr_upper, result.close.fr_upper);
    return result;
}

std::string optimize_json(const OptimizeResult& result) {
    json doc{{"schema_version", kSchemaVersion},
             {"tool_version", kToolVersion},
             {"beta_star", result.beta_star},
             {"fr_star", result.fr_star},
             {"moderate", bound_json(result.moderate)},
             {"close", bound_json(result.close)},
             {"delta_left", result.delta_left},
             {"delta_right", result.delta_right},
             {"iterations", result.iterations}};
    return doc.dump(2) + "\n";
}

void write_optimize_text(std::ostream& os, const OptimizeResult& result) {
    char line[160];
    std::snprintf(line, sizeof line, "beta* = %.6f\n", result.beta_star);
    os << line;
    std::snprintf(line, sizeof line,
                  "moderate: d > %.5f, Fr < %.5f | close: d > %.5f, Fr < %.5f\n",
                  result.moderate.d_lower, result.moderate.fr_upper, result.close.d_lower,
                  result.close.fr_upper);
    os << line;
    std::snprintf(line, sizeof line, "Fr* = %.5f\n", result.fr_star);
    os << line;
}

TheoremReport run_theorem(const TheoremConfig& cfg) {
    TheoremReport report;
    report.tolerances.beta_tol = cfg.tol_beta;

    report.far = case_far::far_case_bound(cfg.far_theta);
    if (cfg.forced_beta) {
        report.beta_star = *cfg.forced_beta;
        report.moderate_at_beta = case_moderate::moderate_bound(report.beta_star);
        report.close_at_beta = case_close::close_bound(report.beta_star);
    } else {
        const auto opt = optimize_beta(cfg.tol_beta);
        report.beta_star = opt.beta_star;
        report.moderate_at_beta = opt.moderate;
        report.close_at_beta = opt.close;
    }

    report.monotone = case_moderate::verify_monotone(
        case_moderate::default_monotone_region(cfg.monotone_nx, cfg.monotone_ny), cfg.workers);
    report.chain = case_moderate::verify_chain(cfg.chain_n, cfg.workers);
    report.lemma = core::verify_lemma_constants(cfg.lemma_n);
    report.feasibility = case_close::feasibility(
        case_close::CloseParams::make(report.close_at_beta.root.x, report.beta_star));

    report.certificates_ok = report.monotone.passed() && report.chain.ok &&
                             report.lemma.ok && report.feasibility.ok;
    report.fr_final = core::round_up_decimals(
        std::max({report.far.fr_upper, report.moderate_at_beta.fr_upper,
                  report.close_at_beta.fr_upper}),
        5);
    report.pass = report.certificates_ok && report.fr_final <= report.tolerances.fr_final_max;
    return report;
}

std::string theorem_json(const TheoremReport& report) {
    json doc{{"schema_version", kSchemaVersion},
             {"tool_version", report.tool_version},
             {"pass", report.pass},
             {"certificates_ok", report.certificates_ok},
             {"beta_star", report.beta_star},
             {"fr_final", report.fr_final},
             {"cases",
              {{"far", bound_json(report.far)},
               {"moderate", bound_json(report.moderate_at_beta)},
               {"close", bound_json(report.close_at_beta)}}},
             {"certificates",
              {{"monotone", certificate_json(report.monotone)},
               {"chain", chain_json(report.chain)},
               {"lemma_constants", lemma_json(report.lemma)},
               {"feasibility", feasibility_json(report.feasibility)}}},
             {"tolerances", tolerances_json(report.tolerances)}};
    return doc.dump(2) + "\n";
}

void write_theorem_text(std::ostream& os, const TheoremReport& report) {
    char line[160];
    std::snprintf(line, sizeof line, "far case (theta=0.95):    d > %.5f, Fr < %.5f\n",
                  report.far.d_lower, report.far.fr_upper);
    os << line;
    std::snprintf(line, sizeof line, "moderate case (beta=%.5f): d > %.5f, Fr < %.5f\n",
                  report.beta_star, report.moderate_at_beta.d_lower,
                  report.moderate_at_beta.fr_upper);
    os << line;
    std::snprintf(line, sizeof line, "close case    (beta=%.5f): d > %.5f, Fr < %.5f\n",
                  report.beta_star, report.close_at_beta.d_lower,
                  report.close_at_beta.fr_upper);
    os << line;
    os << "certificates: " << (report.certificates_ok ? "all passed" : "FAILED") << "\n";
    std::snprintf(line, sizeof line, "Fr bound for all solitary waves: %.5f\n", report.fr_final);
    os << line;
    os << (report.pass ? "PASS" : "FAIL") << "\n";
}

VerifyReport run_verify(int monotone_nx, int monotone_ny, int chain_n, int lemma_n,
                        int workers) {
    VerifyReport report;
    report.monotone = case_moderate::verify_monotone(
        case_moderate::default_monotone_region(monotone_nx, monotone_ny), workers);
    report.chain = case_moderate::verify_chain(chain_n, workers);
    report.lemma = core::verify_lemma_constants(lemma_n);
    // Reference state: the close-case root at the crossing beta of the tables.
    const auto close = case_close::close_bound(0.00201);
    report.feasibility =
        case_close::feasibility(case_close::CloseParams::make(close.root.x, 0.00201));
    report.ok = report.monotone.passed() && report.chain.ok && report.lemma.ok &&
                report.feasibility.ok;
    return report;
}

std::string verify_json(const VerifyReport& report) {
    json doc{{"schema_version", kSchemaVersion},
             {"tool_version", kToolVersion},
             {"ok", report.ok},
             {"monotone", certificate_json(report.monotone)},
             {"chain", chain_json(report.chain)},
             {"lemma_constants", lemma_json(report.lemma)},
             {"feasibility", feasibility_json(report.feasibility)}};
    return doc.dump(2) + "\n";
}

void write_verify_text(std::ostream& os, const VerifyReport& report) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "%s  monotone certificate: max dJ/d(eta) = %.6e at (r=%.6f, eta=%.6f)\n",
                  report.monotone.passed() ? "PASS" : "FAIL", report.monotone.max_value,
                  report.monotone.worst_x, report.monotone.worst_y);
    os << line;
    for (const auto& st : report.chain.steps) {
        std::snprintf(line, sizeof line, "%s  chain step: %s (margin %.3e)\n",
                      st.ok ? "PASS" : "FAIL", st.name.c_str(), st.margin);
        os << line;
    }
    for (const auto& c : report.lemma.checks) {
        std::snprintf(line, sizeof line, "%s  lemma constant %s (margin %.3e)\n",
                      c.ok ? "PASS" : "FAIL", c.name.c_str(), c.margin);
        os << line;
    }
    for (const auto& c : report.feasibility.checks) {
        std::snprintf(line, sizeof line, "%s  feasibility %s (margin %.3e)\n",
                      c.ok ? "PASS" : "FAIL", c.name.c_str(), c.margin);
        os << line;
    }
    os << (report.ok ? "PASS" : "FAIL") << "  all certificates\n";
}

}  // namespace froude::pipeline
