#include "gff/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gff/expr.hpp"
#include "json.hpp"

namespace gff {

using ordered_json = nlohmann::ordered_json;

const char* command_name(Command c) {
    switch (c) {
        case Command::VerifyStructure: return "verify-structure";
        case Command::VerifySpaceform: return "verify-spaceform";
        case Command::VerifyChart: return "verify-chart";
        case Command::SchurScan: return "schur-scan";
        case Command::ErratumGuard: return "erratum-guard";
    }
    return "unknown";
}

std::vector<int> parse_eps(const std::string& text) {
    std::vector<int> eps;
    for (char ch : text) {
        if (ch == '+') eps.push_back(1);
        else if (ch == '-') eps.push_back(-1);
        else if (ch == ',' || ch == ' ') continue;
        else throw ConfigError(std::string("eps spec: unexpected character '") + ch + "'");
    }
    if (eps.empty()) throw ConfigError("eps spec: empty");
    return eps;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("n must be ≥ 1");
    if (cfg.s < 1) throw ConfigError("s must be ≥ 1");
    if (static_cast<int>(cfg.eps.size()) != cfg.s)
        throw ConfigError("eps must list exactly s signs");
    for (int e : cfg.eps)
        if (e != 1 && e != -1) throw ConfigError("eps entries must be ±1");
    if (cfg.npoints < 1) throw ConfigError("points must be ≥ 1");
    if (!(cfg.tol.alg > 0.0) || !(cfg.tol.diff > 0.0))
        throw ConfigError("tolerances must be positive");
    if (cfg.phi_signature.first >= 0 &&
        cfg.phi_signature.first + cfg.phi_signature.second != cfg.n)
        throw ConfigError("phi signature must satisfy p+q=n");
    if (cfg.perturb < 0.0) throw ConfigError("perturb must be ≥ 0");
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

int report_exit_code(const VerificationReport& rep) { return rep.all_pass() ? 0 : 1; }

// ---------------------------------------------------------------------------
// Helpers shared by the commands
// ---------------------------------------------------------------------------

namespace {

void add_check(VerificationReport& rep, std::string name, double residual, double tol,
               std::string note = "") {
    rep.checks.push_back({std::move(name), residual, tol, residual < tol, std::move(note)});
}

void merge_max(std::vector<CheckResult>& agg, const std::string& name, double residual,
               double tol) {
    for (auto& c : agg)
        if (c.name == name) {
            c.residual = std::max(c.residual, residual);
            c.pass = c.residual < c.tolerance;
            return;
        }
    agg.push_back({name, residual, tol, residual < tol, ""});
}

ChartStructure resolve_chart(const RunConfig& cfg) {
    if (!cfg.file.empty()) return load_chart_file(cfg.file);
    if (!cfg.example.empty()) return builtin_chart(cfg.example, cfg.n, cfg.s, cfg.eps);
    throw ConfigError("this command needs --example <id> or --file <path>");
}

double frame_gram_residual(const AdaptedFrame& frame, const MetricAtPoint& g) {
    auto vecs = frame.all_vectors();
    auto signs = frame.all_signs();
    double r = 0.0;
    for (std::size_t a = 0; a < vecs.size(); ++a)
        for (std::size_t b = 0; b < vecs.size(); ++b) {
            double target = (a == b) ? static_cast<double>(signs[a]) : 0.0;
            r = std::max(r, std::abs(g.inner(vecs[a], vecs[b]) - target));
        }
    return r;
}

double ricci_xi_residual(const TensorAtPoint& ric, const GffPointStructure& st) {
    const int d = st.dim();
    auto eb = st.eta_bar_components();
    double r = 0.0;
    for (int a = 0; a < st.s; ++a) {
        double ea = static_cast<double>(st.eps[static_cast<std::size_t>(a)]);
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j)
                acc += ric.comp[static_cast<std::size_t>(i) * d + j] *
                       st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
            r = std::max(r, std::abs(acc - 2.0 * st.n * ea * eb[static_cast<std::size_t>(i)]));
        }
    }
    return r;
}

double phi_cubed_residual(const GffPointStructure& st) {
    const int d = st.dim();
    auto phi2 = mat_mul(st.phi.comp, st.phi.comp, d);
    auto phi3 = mat_mul(phi2, st.phi.comp, d);
    double r = 0.0;
    for (std::size_t m = 0; m < phi3.size(); ++m)
        r = std::max(r, std::abs(phi3[m] + st.phi.comp[m]));
    return r;
}

// ---------------------------------------------------------------------------
// verify-structure
// ---------------------------------------------------------------------------

void run_verify_structure(const RunConfig& cfg, VerificationReport& rep) {
    if (!cfg.file.empty() || !cfg.example.empty()) {
        auto cs = resolve_chart(cfg);
        auto pts = sample_points(cs.metric_chart(), cfg.npoints, cfg.seed);
        std::vector<CheckResult> agg;
        for (const auto& p : pts) {
            auto st = cs.freeze(p);
            for (const auto& r : validate_structure(st).residuals)
                merge_max(agg, r.name, r.residual, cfg.tol.chart_validate());
            merge_max(agg, "phi_cubed", phi_cubed_residual(st), cfg.tol.chart_validate());
            auto frame = build_adapted_frame(st, cfg.seed);
            merge_max(agg, "frame_gram", frame_gram_residual(frame, st.g),
                      cfg.tol.chart_validate());
        }
        rep.checks = std::move(agg);
        return;
    }

    std::pair<int, int> sig = cfg.phi_signature.first >= 0 ? cfg.phi_signature
                                                           : std::pair<int, int>{cfg.n, 0};
    auto st = canonical_point_structure(cfg.n, cfg.s, cfg.eps, sig);
    for (const auto& r : validate_structure(st).residuals)
        add_check(rep, r.name, r.residual, cfg.tol.alg);
    add_check(rep, "phi_cubed", phi_cubed_residual(st), cfg.tol.alg);
    auto frame = build_adapted_frame(st, cfg.seed);
    add_check(rep, "frame_gram", frame_gram_residual(frame, st.g), cfg.tol.alg);
}

// ---------------------------------------------------------------------------
// verify-spaceform
// ---------------------------------------------------------------------------

EtaEinsteinFit spaceform_checks(const RunConfig& cfg, const SpaceFormParams& params,
                                std::pair<int, int> phi_sig, std::vector<CheckResult>& agg) {
    const Tolerances& tol = cfg.tol;
    auto st = canonical_point_structure(params.n, params.s, params.eps, phi_sig);
    auto R = build_space_form_curvature(params, st);

    merge_max(agg, "curvature_symmetries", curvature_symmetry_residuals(R).max(), tol.alg);
    merge_max(agg, "characteristic_identities",
              check_characteristic_identities(R, st, 64, cfg.seed).max_residual(), tol.alg);

    double c_seen = 0.0;
    double spread = phi_plane_spread(R, st, 100, cfg.seed, &c_seen);
    merge_max(agg, "phi_sectional_constancy",
              std::max(spread, std::abs(c_seen - params.c)), tol.fit_param());

    auto frame = build_adapted_frame(st, cfg.seed);
    auto ric = ricci_from_curvature(R, frame);

    if (cfg.perturb > 0.0) {
        // symmetrized u♭⊗v♭ misfit injection along two canonical Im(φ) axes
        const int d = st.dim();
        std::vector<double> u(static_cast<std::size_t>(d), 0.0), v(static_cast<std::size_t>(d), 0.0);
        u[0] = 1.0;                                       // E_1
        v[static_cast<std::size_t>(params.n >= 2 ? 1 : params.n)] = 1.0;  // E_2, or φE_1 at n=1
        auto ub = mat_vec(st.g.comp, u, d);
        auto vb = mat_vec(st.g.comp, v, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                ric.comp[static_cast<std::size_t>(i) * d + j] +=
                    cfg.perturb * (ub[static_cast<std::size_t>(i)] * vb[static_cast<std::size_t>(j)] +
                                   vb[static_cast<std::size_t>(i)] * ub[static_cast<std::size_t>(j)]);
    }

    merge_max(agg, "ricci_xi_identity", ricci_xi_residual(ric, st), tol.alg);

    auto fit = eta_einstein_fit(ric, st);
    merge_max(agg, "eta_einstein_fit_residual", fit.residual, tol.alg);
    merge_max(agg, "fit_k_equals_2n", std::abs(fit.k - 2.0 * params.n), tol.fit_param());
    merge_max(agg, "fit_h_closed_form", std::abs(fit.h - h_closed_form(params)),
              tol.fit_param());
    merge_max(agg, "scalar_curvature_closed_form",
              std::abs(scalar_curvature(ric, frame, st.g) -
                       tau_closed_form(fit.h, params.n, params.eps_sum())),
              tol.fit_param());
    return fit;
}

void annotate(std::vector<CheckResult>& agg, const std::string& name, const std::string& note) {
    for (auto& c : agg)
        if (c.name == name) c.note = note;
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void run_verify_spaceform(const RunConfig& cfg, VerificationReport& rep) {
    std::vector<CheckResult> agg;
    if (cfg.sweep) {
        int sets = 0;
        for (int n : {1, 2, 3})
            for (int s : {1, 2, 3})
                for (int mask = 0; mask < (1 << s); ++mask) {
                    std::vector<int> eps;
                    for (int a = 0; a < s; ++a) eps.push_back((mask >> a) & 1 ? -1 : 1);
                    for (double c : {-2.0, 0.0, 1.0, 4.0}) {
                        SpaceFormParams params{n, s, eps, c};
                        spaceform_checks(cfg, params, {n, 0}, agg);
                        // indefinite Im(φ) variant exercises both causal characters
                        if (n >= 2) spaceform_checks(cfg, params, {n - 1, 1}, agg);
                        ++sets;
                    }
                }
        rep.checks = std::move(agg);
        if (!rep.checks.empty())
            rep.checks.front().note = std::to_string(sets) + " parameter sets swept";
        return;
    }
    SpaceFormParams params{cfg.n, cfg.s, cfg.eps, cfg.c};
    std::pair<int, int> sig = cfg.phi_signature.first >= 0 ? cfg.phi_signature
                                                           : std::pair<int, int>{cfg.n, 0};
    auto fit = spaceform_checks(cfg, params, sig, agg);
    annotate(agg, "fit_k_equals_2n", "fitted k = " + num(fit.k) + ", target " + num(2.0 * cfg.n));
    annotate(agg, "fit_h_closed_form",
             "fitted h = " + num(fit.h) + ", closed form " + num(h_closed_form(params)));
    rep.checks = std::move(agg);
}

// ---------------------------------------------------------------------------
// verify-chart
// ---------------------------------------------------------------------------

void run_verify_chart(const RunConfig& cfg, VerificationReport& rep) {
    auto cs = resolve_chart(cfg);
    auto pts = sample_points(cs.metric_chart(), cfg.npoints, cfg.seed);
    const Tolerances& tol = cfg.tol;

    std::vector<CheckResult> agg;
    for (std::size_t ip = 0; ip < pts.size(); ++ip) {
        const auto& p = pts[ip];
        auto st = cs.freeze(p);
        merge_max(agg, "structure_axioms", validate_structure(st).max_residual(),
                  tol.chart_validate());
        merge_max(agg, "almost_s", check_almost_s(cs, p), tol.chart_gate());
        merge_max(agg, "normality", normality_residual(cs, p), tol.chart_gate());
        merge_max(agg, "nabla_phi", check_nabla_phi(cs, p), tol.chart_gate());
        merge_max(agg, "nabla_xi", check_nabla_xi(cs, p), tol.chart_gate());
        merge_max(agg, "killing", check_killing(cs, p), tol.chart_gate());
        merge_max(agg, "connection_torsion_free",
                  christoffels(cs, p).torsion_residual(), tol.alg);
        merge_max(agg, "metric_compatibility",
                  metric_compatibility_residual(cs.metric_chart(), p), 10.0 * tol.alg);

        auto R = riemann_at_point(cs, p);
        merge_max(agg, "curvature_symmetries", curvature_symmetry_residuals(R).max(),
                  tol.chart_validate());
        auto ric = ricci_by_contraction(R);
        merge_max(agg, "ricci_xi_identity", ricci_xi_residual(ric, st), tol.diff);

        auto fit = eta_einstein_fit(ric, st);
        merge_max(agg, "eta_einstein_fit_residual", fit.residual, tol.diff);
        merge_max(agg, "fit_k_equals_2n", std::abs(fit.k - 2.0 * cs.n()), tol.diff);
        if (cfg.expect_h)
            merge_max(agg, "fit_h_expected", std::abs(fit.h - *cfg.expect_h), tol.diff);

        double eps_sum = 0.0;
        for (int e : cs.eps()) eps_sum += static_cast<double>(e);
        auto frame = build_adapted_frame(st, cfg.seed);
        merge_max(agg, "scalar_curvature_closed_form",
                  std::abs(scalar_curvature(ric, frame, st.g) -
                           tau_closed_form(fit.h, cs.n(), eps_sum)),
                  tol.spread());

        double c_seen = 0.0;
        double pspread = phi_plane_spread(R, st, 16, cfg.seed + 1000 + static_cast<std::uint64_t>(ip), &c_seen);
        merge_max(agg, "c_pointwise_spread", pspread, tol.diff);
        if (cfg.expect_c)
            merge_max(agg, "phi_sectional_expected", std::abs(c_seen - *cfg.expect_c), tol.diff);

        // link to the curvature model built from the fitted c at this point
        SpaceFormParams params{cs.n(), cs.s(), cs.eps(), c_seen};
        auto Rm = build_space_form_curvature(params, st);
        double mm = 0.0;
        for (std::size_t m = 0; m < R.comp.size(); ++m)
            mm = std::max(mm, std::abs(R.comp[m] - Rm.comp[m]));
        merge_max(agg, "curvature_matches_space_form_model", mm, tol.chart_gate());
        if (ip + 1 == pts.size()) {
            annotate(agg, "fit_k_equals_2n", "fitted k = " + num(fit.k));
            if (cfg.expect_h)
                annotate(agg, "fit_h_expected",
                         "fitted h = " + num(fit.h) + ", expected " + num(*cfg.expect_h));
            if (cfg.expect_c)
                annotate(agg, "phi_sectional_expected",
                         "measured c = " + num(c_seen) + ", expected " + num(*cfg.expect_c));
        }
    }
    rep.checks = std::move(agg);
}

// ---------------------------------------------------------------------------
// schur-scan
// ---------------------------------------------------------------------------

void run_schur_scan(const RunConfig& cfg, VerificationReport& rep) {
    auto cs = resolve_chart(cfg);
    ScanOptions opts;
    opts.npoints = cfg.npoints;
    opts.seed = cfg.seed;
    opts.tol = cfg.tol;

    ScanReport scan;
    try {
        scan = scan_eta_einstein(cs, opts);
    } catch (const GateFailure& e) {
        add_check(rep, "s_gates", 1.0, cfg.tol.chart_gate(), e.what());
        return;
    }
    add_check(rep, "s_gates", 0.0, cfg.tol.chart_gate(),
              std::to_string(scan.points.size()) + " points certified");

    double kdev = 0.0, fitres = 0.0, pspread = 0.0;
    for (std::size_t i = 0; i < scan.k_values.size(); ++i) {
        kdev = std::max(kdev, std::abs(scan.k_values[i] - 2.0 * cs.n()));
        fitres = std::max(fitres, scan.fit_residuals[i]);
        pspread = std::max(pspread, scan.c_pointwise_spreads[i]);
    }
    add_check(rep, "fit_k_equals_2n", kdev, cfg.tol.diff);
    add_check(rep, "eta_einstein_fit_residual", fitres, cfg.tol.diff);

    auto hv = schur_h_constancy(scan, cs.n(), cfg.tol);
    std::string h_note = "h = " + num(scan.h_values.front()) + "; " + hv.message;
    if (hv.status == VerdictStatus::NotApplicable)
        add_check(rep, "h_constancy", 0.0, cfg.tol.spread(), h_note);
    else
        add_check(rep, "h_constancy", scan.spread_h, cfg.tol.spread(), h_note);

    add_check(rep, "c_pointwise_spread", pspread, cfg.tol.diff);
    add_check(rep, "c_constancy", scan.spread_c, cfg.tol.spread(),
              "c = " + num(scan.c_values.front()) + "; chart-local constancy across the sampled box");
    add_check(rep, "xi_derivative_of_h", scan.xi_h_max, cfg.tol.spread());
    add_check(rep, "contracted_bianchi", scan.bianchi_residual, cfg.tol.spread());

    if (cfg.expect_h) {
        double dev = 0.0;
        for (double h : scan.h_values) dev = std::max(dev, std::abs(h - *cfg.expect_h));
        add_check(rep, "fit_h_expected", dev, cfg.tol.diff);
    }
    if (cfg.expect_c) {
        double dev = 0.0;
        for (double c : scan.c_values) dev = std::max(dev, std::abs(c - *cfg.expect_c));
        add_check(rep, "phi_sectional_expected", dev, cfg.tol.diff);
    }
}

// ---------------------------------------------------------------------------
// erratum-guard
// ---------------------------------------------------------------------------

void run_erratum_guard(const RunConfig& cfg, VerificationReport& rep) {
    SpaceFormParams params{cfg.n, cfg.s, cfg.eps, cfg.c};
    std::pair<int, int> sig = cfg.phi_signature.first >= 0 ? cfg.phi_signature
                                                           : std::pair<int, int>{cfg.n, 0};
    auto st = canonical_point_structure(params.n, params.s, params.eps, sig);
    double e = params.eps_sum();

    auto R_fixed = build_space_form_curvature(params, st, false);
    double c_fixed = 0.0;
    double spread_fixed = phi_plane_spread(R_fixed, st, 100, cfg.seed, &c_fixed);
    add_check(rep, "phi_sectional_with_default_coefficient",
              std::max(spread_fixed, std::abs(c_fixed - params.c)), cfg.tol.fit_param(),
              "Φ-term coefficient (c−Σε)/4 reproduces c");

    auto R_alt = build_space_form_curvature(params, st, true);
    double c_alt = 0.0;
    double spread_alt = phi_plane_spread(R_alt, st, 100, cfg.seed, &c_alt);
    add_check(rep, "phi_sectional_with_alternate_coefficient",
              std::max(spread_alt, std::abs(c_alt - (params.c + 1.5 * e))),
              cfg.tol.fit_param(),
              "Φ-term coefficient (c+Σε)/4 shifts φ-sectional curvature to c+1.5·Σε");
    if (e != 0.0)
        add_check(rep, "coefficient_discrepancy",
                  std::abs(std::abs(c_alt - c_fixed) - 1.5 * std::abs(e)),
                  cfg.tol.fit_param(),
                  "the two coefficient choices differ by exactly 1.5·|Σε| when Σε ≠ 0");

    auto frame = build_adapted_frame(st, cfg.seed);
    auto fitp = eta_einstein_fit(ricci_from_curvature(R_alt, frame), st);
    add_check(rep, "alternate_variant_fit_residual", fitp.residual, cfg.tol.alg,
              "the alternate variant is still η-Einstein, with shifted h");
    add_check(rep, "alternate_variant_k_equals_2n", std::abs(fitp.k - 2.0 * params.n),
              cfg.tol.fit_param());
}

}  // namespace

// ---------------------------------------------------------------------------
// run / serialization
// ---------------------------------------------------------------------------

VerificationReport run(const RunConfig& cfg) {
    validate_config(cfg);
    VerificationReport rep;
    rep.command = command_name(cfg.command);
    switch (cfg.command) {
        case Command::VerifyStructure: run_verify_structure(cfg, rep); break;
        case Command::VerifySpaceform: run_verify_spaceform(cfg, rep); break;
        case Command::VerifyChart: run_verify_chart(cfg, rep); break;
        case Command::SchurScan: run_schur_scan(cfg, rep); break;
        case Command::ErratumGuard: run_erratum_guard(cfg, rep); break;
    }
    return rep;
}

namespace {

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["n"] = cfg.n;
    j["s"] = cfg.s;
    j["eps"] = cfg.eps;
    j["c"] = cfg.c;
    if (cfg.phi_signature.first >= 0)
        j["phi_signature"] = {cfg.phi_signature.first, cfg.phi_signature.second};
    else
        j["phi_signature"] = nullptr;
    j["example"] = cfg.example;
    j["file"] = cfg.file;
    j["points"] = cfg.npoints;
    j["seed"] = cfg.seed;
    j["tol_alg"] = cfg.tol.alg;
    j["tol_diff"] = cfg.tol.diff;
    j["sweep"] = cfg.sweep;
    j["perturb"] = cfg.perturb;
    j["expect_h"] = cfg.expect_h ? ordered_json(*cfg.expect_h) : ordered_json(nullptr);
    j["expect_c"] = cfg.expect_c ? ordered_json(*cfg.expect_c) : ordered_json(nullptr);
    return j;
}

ordered_json conventions_json() {
    ordered_json j;
    j["curvature_slot_order"] = "R(X,Y,Z,W) = g(R(Z,W)Y, X)";
    j["sectional_curvature"] = "k(x,y) = R(x,y,x,y) / (g(x,x)g(y,y) - g(x,y)^2)";
    j["ricci_trace"] = "Ric(X,Y) = sum_a eps_a R(X,F_a,Y,F_a) over an orthonormal frame";
    j["d_eta_normalization"] = "d eta(X,Y) = (X(eta(Y)) - Y(eta(X)) - eta([X,Y])) / 2";
    j["phi_term_coefficient"] = "(c - sum_eps)/4 on the Phi-squared terms";
    return j;
}

}  // namespace

std::string VerificationReport::to_json(const RunConfig& cfg) const {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config_json(cfg);
    j["conventions"] = conventions_json();
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["residual"] = c.residual;
        cj["tolerance"] = c.tolerance;
        cj["pass"] = c.pass;
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(cj);
    }
    j["verdict"] = all_pass() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_text(const RunConfig& cfg) const {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << " — " << command << "\n";
    os << "seed " << cfg.seed << ", tol alg " << cfg.tol.alg << ", tol diff " << cfg.tol.diff
       << "\n";
    auto conv = conventions_json();
    os << "conventions:\n";
    for (auto it = conv.begin(); it != conv.end(); ++it)
        os << "  " << it.key() << ": " << it.value().get<std::string>() << "\n";
    os << "checks:\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  residual=" << c.residual
           << "  tol=" << c.tolerance;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    std::size_t npass = 0;
    for (const auto& c : checks)
        if (c.pass) ++npass;
    os << "verdict: " << (all_pass() ? "PASS" : "FAIL") << " (" << npass << "/" << checks.size()
       << " checks)\n";
    return os.str();
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file: invalid JSON: ") + e.what());
    }
    RunConfig cfg = base;
    if (doc.contains("n")) cfg.n = doc["n"].get<int>();
    if (doc.contains("s")) cfg.s = doc["s"].get<int>();
    if (doc.contains("eps")) {
        if (doc["eps"].is_string()) cfg.eps = parse_eps(doc["eps"].get<std::string>());
        else cfg.eps = doc["eps"].get<std::vector<int>>();
    }
    if (doc.contains("c")) cfg.c = doc["c"].get<double>();
    if (doc.contains("phi_signature") && !doc["phi_signature"].is_null()) {
        auto v = doc["phi_signature"].get<std::vector<int>>();
        if (v.size() != 2) throw ConfigError("config: phi_signature must be [p,q]");
        cfg.phi_signature = {v[0], v[1]};
    }
    if (doc.contains("example")) cfg.example = doc["example"].get<std::string>();
    if (doc.contains("file")) cfg.file = doc["file"].get<std::string>();
    if (doc.contains("points")) cfg.npoints = doc["points"].get<int>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("tol_alg")) cfg.tol.alg = doc["tol_alg"].get<double>();
    if (doc.contains("tol_diff")) cfg.tol.diff = doc["tol_diff"].get<double>();
    if (doc.contains("sweep")) cfg.sweep = doc["sweep"].get<bool>();
    if (doc.contains("perturb")) cfg.perturb = doc["perturb"].get<double>();
    if (doc.contains("expect_h")) cfg.expect_h = doc["expect_h"].get<double>();
    if (doc.contains("expect_c")) cfg.expect_c = doc["expect_c"].get<double>();
    if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
    return cfg;
}

}  // namespace gff
