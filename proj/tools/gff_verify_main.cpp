#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gff/report.hpp"

namespace {

struct CliState {
    gff::RunConfig cfg;
    std::string eps_text = "+";
    std::vector<int> phi_sig;
    std::string config_path;
    double expect_h_val = 0.0;
    double expect_c_val = 0.0;
};

void add_common_flags(CLI::App* cmd, CliState& st) {
    cmd->add_option("--seed", st.cfg.seed, "RNG seed for all sampled data (default 42)");
    cmd->add_option("--tol-alg", st.cfg.tol.alg, "algebraic tolerance (default 1e-10)");
    cmd->add_option("--tol-diff", st.cfg.tol.diff, "differential tolerance (default 1e-6)");
    cmd->add_option("--out", st.cfg.out_path, "write the structured JSON report here");
    cmd->add_option("--config", st.config_path, "JSON config file (flags override it)");
}

void add_model_flags(CLI::App* cmd, CliState& st) {
    cmd->add_option("--n", st.cfg.n, "n (half the rank of φ)");
    cmd->add_option("--s", st.cfg.s, "s (number of characteristic vector fields)");
    cmd->add_option("--eps", st.eps_text, "characteristic signs, e.g. '+', '+-', '++-'");
    cmd->add_option("--c", st.cfg.c, "φ-sectional curvature value");
    cmd->add_option("--phi-signature", st.phi_sig, "signature (p,q) of g on Im(φ), p+q=n")
        ->expected(2);
}

void add_chart_flags(CLI::App* cmd, CliState& st) {
    cmd->add_option("--example", st.cfg.example,
                    "builtin chart: flat_gff | s_r4_lorentz | s_r2ns");
    cmd->add_option("--file", st.cfg.file, "declarative chart file (JSON)");
    cmd->add_option("--n", st.cfg.n, "n for parametric examples");
    cmd->add_option("--s", st.cfg.s, "s for parametric examples");
    cmd->add_option("--eps", st.eps_text, "signs for parametric examples");
    cmd->add_option("--points", st.cfg.npoints, "sample points per run (default 10)");
}

bool was_set(CLI::App* cmd, const std::string& name) {
    auto* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

int run_and_emit(CliState& st, CLI::App* cmd, gff::Command command) {
    st.cfg.command = command;

    if (was_set(cmd, "--config")) {
        // file first, explicit flags override
        gff::RunConfig from_file = gff::load_config_file(st.config_path, st.cfg);
        gff::RunConfig merged = from_file;
        if (was_set(cmd, "--n")) merged.n = st.cfg.n;
        if (was_set(cmd, "--s")) merged.s = st.cfg.s;
        if (was_set(cmd, "--eps")) merged.eps = gff::parse_eps(st.eps_text);
        if (was_set(cmd, "--c")) merged.c = st.cfg.c;
        if (was_set(cmd, "--example")) merged.example = st.cfg.example;
        if (was_set(cmd, "--file")) merged.file = st.cfg.file;
        if (was_set(cmd, "--points")) merged.npoints = st.cfg.npoints;
        if (was_set(cmd, "--seed")) merged.seed = st.cfg.seed;
        if (was_set(cmd, "--tol-alg")) merged.tol.alg = st.cfg.tol.alg;
        if (was_set(cmd, "--tol-diff")) merged.tol.diff = st.cfg.tol.diff;
        if (was_set(cmd, "--out")) merged.out_path = st.cfg.out_path;
        st.cfg = merged;
    } else {
        if (was_set(cmd, "--eps")) st.cfg.eps = gff::parse_eps(st.eps_text);
    }
    if (!was_set(cmd, "--config") && !was_set(cmd, "--eps")) st.cfg.eps = gff::parse_eps(st.eps_text);
    if (was_set(cmd, "--phi-signature")) st.cfg.phi_signature = {st.phi_sig[0], st.phi_sig[1]};
    if (was_set(cmd, "--expect-h")) st.cfg.expect_h = st.expect_h_val;
    if (was_set(cmd, "--expect-c")) st.cfg.expect_c = st.expect_c_val;

    auto report = gff::run(st.cfg);
    std::cout << report.to_text(st.cfg);
    if (!st.cfg.out_path.empty()) {
        std::ofstream out(st.cfg.out_path, std::ios::binary);
        if (!out) throw gff::ConfigError("cannot open output path: " + st.cfg.out_path);
        out << report.to_json(st.cfg);
    }
    return gff::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification tool for indefinite framed metric structures and their "
                 "space-form curvature models"};
    app.require_subcommand(1);
    CliState st;

    auto* vstruct = app.add_subcommand(
        "verify-structure", "pointwise structure axioms (canonical model or sampled chart)");
    add_model_flags(vstruct, st);
    vstruct->add_option("--example", st.cfg.example, "validate a builtin chart instead");
    vstruct->add_option("--file", st.cfg.file, "validate a declarative chart file instead");
    vstruct->add_option("--points", st.cfg.npoints, "sample points for chart validation");
    add_common_flags(vstruct, st);

    auto* vsf = app.add_subcommand("verify-spaceform",
                                   "curvature model checks and the η-Einstein fit");
    add_model_flags(vsf, st);
    vsf->add_flag("--sweep", st.cfg.sweep, "run the whole (n,s,eps,c) grid");
    vsf->add_option("--perturb", st.cfg.perturb,
                    "inject a symmetric Ricci perturbation of this scale (rejection path)");
    add_common_flags(vsf, st);

    auto* vchart = app.add_subcommand("verify-chart", "field-level gates on a coordinate chart");
    add_chart_flags(vchart, st);
    vchart->add_option("--expect-h", st.expect_h_val, "assert the fitted h equals this value");
    vchart->add_option("--expect-c", st.expect_c_val, "assert φ-sectional curvature equals this");
    add_common_flags(vchart, st);

    auto* scan = app.add_subcommand("schur-scan",
                                    "constancy scans for h and c plus the Bianchi residual");
    add_chart_flags(scan, st);
    scan->add_option("--expect-h", st.expect_h_val, "assert the fitted h equals this value");
    scan->add_option("--expect-c", st.expect_c_val, "assert φ-sectional curvature equals this");
    add_common_flags(scan, st);

    auto* guard = app.add_subcommand("erratum-guard",
                                     "compare the two Φ-term coefficient choices");
    add_model_flags(guard, st);
    add_common_flags(guard, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (vstruct->parsed()) return run_and_emit(st, vstruct, gff::Command::VerifyStructure);
        if (vsf->parsed()) return run_and_emit(st, vsf, gff::Command::VerifySpaceform);
        if (vchart->parsed()) return run_and_emit(st, vchart, gff::Command::VerifyChart);
        if (scan->parsed()) return run_and_emit(st, scan, gff::Command::SchurScan);
        if (guard->parsed()) return run_and_emit(st, guard, gff::Command::ErratumGuard);
    } catch (const gff::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gff::UnknownExample& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gff::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gff::Error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
