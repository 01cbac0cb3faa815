// Command-line front end for the solitary-wave Froude bound pipeline.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "froude/pipeline.hpp"

namespace {

struct OutputTarget {
    std::string path;  // empty = stdout

    int emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return 0;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file " << path << "\n";
            return 1;
        }
        file << text;
        return 0;
    }
};

bool parse_grid(const std::string& text, int& nx, int& ny) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) return false;
    try {
        nx = std::stoi(text.substr(0, sep));
        ny = std::stoi(text.substr(sep + 1));
    } catch (...) {
        return false;
    }
    return nx >= 2 && ny >= 2;
}

int fail(const std::string& format, const std::string& message, const OutputTarget& out) {
    if (format == "json") {
        out.emit("{\n  \"error\": \"" + message + "\"\n}\n");
    } else {
        std::cerr << "error: " << message << "\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified upper bounds for the Froude number of solitary gravity waves"};
    app.require_subcommand(1);

    std::vector<double> betas;
    std::string format = "csv";
    std::string grid = "1500x1500";
    std::string out_path;
    double theta = 0.95;
    double tol = 1e-6;
    int workers = 1;
    int chain_n = 500;
    int lemma_n = 10000;
    std::optional<double> forced_beta;

    auto* tables = app.add_subcommand("tables", "Bound tables for both crest regimes");
    tables->add_option("--beta", betas, "beta values for both tables (defaults: the published rows)");
    tables->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    tables->add_option("--out", out_path, "output file (default stdout)");

    auto* figure1 = app.add_subcommand("figure1", "Export the dJ/d(eta) surface as CSV");
    figure1->add_option("--grid", grid, "grid resolution NXxNY (default 1500x1500)");
    figure1->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    figure1->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run every certification sweep");
    verify->add_option("--grid", grid, "monotonicity grid NXxNY");
    verify->add_option("--chain-n", chain_n, "chain grid resolution")->check(CLI::PositiveNumber);
    verify->add_option("--lemma-n", lemma_n, "lemma grid resolution")->check(CLI::PositiveNumber);
    verify->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    std::string verify_format = "text";
    verify->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", out_path, "output file (default stdout)");

    auto* optimize = app.add_subcommand("optimize", "Interpolate beta between the two regimes");
    optimize->add_option("--tol", tol, "beta bisection tolerance");
    std::string optimize_format = "text";
    optimize->add_option("--format", optimize_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    optimize->add_option("--out", out_path, "output file (default stdout)");

    auto* theorem = app.add_subcommand("theorem", "Full pipeline and final bound report");
    theorem->add_option("--beta", forced_beta, "force a beta instead of optimizing");
    theorem->add_option("--theta", theta, "far-case crest fraction (exploration only)");
    theorem->add_option("--grid", grid, "monotonicity grid NXxNY");
    theorem->add_option("--chain-n", chain_n, "chain grid resolution")->check(CLI::PositiveNumber);
    theorem->add_option("--lemma-n", lemma_n, "lemma grid resolution")->check(CLI::PositiveNumber);
    theorem->add_option("--tol", tol, "beta bisection tolerance");
    theorem->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    std::string theorem_format = "json";
    theorem->add_option("--format", theorem_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    theorem->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);
    const OutputTarget out{out_path};

    try {
        if (tables->parsed()) {
            const auto b1 = betas.empty() ? froude::pipeline::default_table1_betas() : betas;
            const auto b2 = betas.empty() ? froude::pipeline::default_table2_betas() : betas;
            const auto t1 = froude::pipeline::build_table1(b1);
            const auto t2 = froude::pipeline::build_table2(b2);
            std::string text;
            if (format == "json") {
                text = froude::pipeline::tables_json(t1, t2);
            } else {
                std::ostringstream os;
                froude::pipeline::write_tables_csv(os, t1, t2);
                text = os.str();
            }
            const int rc = out.emit(text);
            if (rc != 0) return rc;
            for (const auto& row : t1) {
                if (!row.solved) return 1;
            }
            for (const auto& row : t2) {
                if (!row.solved) return 1;
            }
            return 0;
        }

        if (figure1->parsed()) {
            int nx = 0, ny = 0;
            if (!parse_grid(grid, nx, ny)) {
                return fail("text", "bad --grid, expected NXxNY with NX, NY >= 2", out);
            }
            std::ostringstream os;
            froude::case_moderate::write_figure_csv(os, nx, ny, workers);
            return out.emit(os.str());
        }

        if (verify->parsed()) {
            int nx = 0, ny = 0;
            if (!parse_grid(grid, nx, ny)) {
                return fail(verify_format, "bad --grid, expected NXxNY with NX, NY >= 2", out);
            }
            const auto report = froude::pipeline::run_verify(nx, ny, chain_n, lemma_n, workers);
            std::string text;
            if (verify_format == "json") {
                text = froude::pipeline::verify_json(report);
            } else {
                std::ostringstream os;
                froude::pipeline::write_verify_text(os, report);
                text = os.str();
            }
            const int rc = out.emit(text);
            return rc != 0 ? rc : (report.ok ? 0 : 1);
        }

        if (optimize->parsed()) {
            const auto result = froude::pipeline::optimize_beta(tol);
            std::string text;
            if (optimize_format == "json") {
                text = froude::pipeline::optimize_json(result);
            } else {
                std::ostringstream os;
                froude::pipeline::write_optimize_text(os, result);
                text = os.str();
            }
            return out.emit(text);
        }

        if (theorem->parsed()) {
            int nx = 0, ny = 0;
            if (!parse_grid(grid, nx, ny)) {
                return fail(theorem_format, "bad --grid, expected NXxNY with NX, NY >= 2", out);
            }
            froude::pipeline::TheoremConfig cfg;
            cfg.forced_beta = forced_beta;
            cfg.far_theta = theta;
            cfg.monotone_nx = nx;
            cfg.monotone_ny = ny;
            cfg.chain_n = chain_n;
            cfg.lemma_n = lemma_n;
            cfg.tol_beta = tol;
            cfg.workers = workers;
            const auto report = froude::pipeline::run_theorem(cfg);
            std::string text;
            if (theorem_format == "json") {
                text = froude::pipeline::theorem_json(report);
            } else {
                std::ostringstream os;
                froude::pipeline::write_theorem_text(os, report);
                text = os.str();
            }
            const int rc = out.emit(text);
            return rc != 0 ? rc : (report.pass ? 0 : 1);
        }
    } catch (const std::exception& e) {
        const std::string fmt = theorem->parsed()   ? theorem_format
                                : verify->parsed()  ? verify_format
                                : optimize->parsed() ? optimize_format
                                                     : format;
        return fail(fmt == "json" ? "json" : "text", e.what(), out);
    }
    return 0;
}
