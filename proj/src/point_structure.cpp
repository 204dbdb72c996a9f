#include "gff/point_structure.hpp"

#include <algorithm>
#include <cmath>

namespace gff {

// ---------------------------------------------------------------------------
// GffPointStructure helpers
// ---------------------------------------------------------------------------

std::vector<double> GffPointStructure::phi_apply(std::span<const double> x) const {
    return mat_vec(phi.comp, x, dim());
}

double GffPointStructure::eta_bar(std::span<const double> x) const {
    double acc = 0.0;
    for (int a = 0; a < s; ++a)
        acc += static_cast<double>(eps[static_cast<std::size_t>(a)]) * dot(eta[static_cast<std::size_t>(a)], x);
    return acc;
}

std::vector<double> GffPointStructure::eta_bar_components() const {
    std::vector<double> e(static_cast<std::size_t>(dim()), 0.0);
    for (int a = 0; a < s; ++a)
        for (int i = 0; i < dim(); ++i)
            e[static_cast<std::size_t>(i)] += static_cast<double>(eps[static_cast<std::size_t>(a)]) * eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    return e;
}

std::vector<double> GffPointStructure::xi_bar() const {
    std::vector<double> v(static_cast<std::size_t>(dim()), 0.0);
    for (int a = 0; a < s; ++a)
        for (int i = 0; i < dim(); ++i) v[static_cast<std::size_t>(i)] += xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    return v;
}

std::vector<double> GffPointStructure::g_phi_phi() const {
    // (φᵀ g φ)_ij = g(φe_i, φe_j)
    auto gphi = mat_mul(g.comp, phi.comp, dim());
    return mat_mul(mat_transpose(phi.comp, dim()), gphi, dim());
}

std::vector<double> GffPointStructure::im_phi_projector() const {
    auto p = mat_mul(phi.comp, phi.comp, dim());
    for (auto& v : p) v = -v;
    return p;
}

// ---------------------------------------------------------------------------
// validate_structure
// ---------------------------------------------------------------------------

double ValidationReport::max_residual() const {
    double m = 0.0;
    for (const auto& r : residuals) m = std::max(m, r.residual);
    return m;
}

ValidationReport validate_structure(const GffPointStructure& st) {
    const int d = st.dim();
    if (st.n < 1 || st.s < 1) throw DimensionMismatch("structure: need n ≥ 1 and s ≥ 1");
    if (st.g.dim != d || st.phi.dim != d || st.phi.contrav != 1 || st.phi.cov != 1)
        throw DimensionMismatch("structure: field dims inconsistent");
    if (static_cast<int>(st.xi.size()) != st.s || static_cast<int>(st.eta.size()) != st.s ||
        static_cast<int>(st.eps.size()) != st.s)
        throw DimensionMismatch("structure: ξ/η/ε counts differ from s");
    for (int a = 0; a < st.s; ++a)
        if (static_cast<int>(st.xi[static_cast<std::size_t>(a)].size()) != d ||
            static_cast<int>(st.eta[static_cast<std::size_t>(a)].size()) != d)
            throw DimensionMismatch("structure: ξ/η component dims differ from 2n+s");

    ValidationReport rep;
    auto push = [&rep](std::string name, double r) { rep.residuals.push_back({std::move(name), r}); };

    // φ² = −I + Σ η^α⊗ξ_α
    auto phi2 = mat_mul(st.phi.comp, st.phi.comp, d);
    double r_phi2 = 0.0;
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            double target = (k == j) ? -1.0 : 0.0;
            for (int a = 0; a < st.s; ++a)
                target += st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] * st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
            r_phi2 = std::max(r_phi2, std::abs(phi2[static_cast<std::size_t>(k) * d + j] - target));
        }
    push("phi_squared", r_phi2);

    // η^α(ξ_β) = δ^α_β
    double r_dual = 0.0;
    for (int a = 0; a < st.s; ++a)
        for (int b = 0; b < st.s; ++b)
            r_dual = std::max(r_dual, std::abs(dot(st.eta[static_cast<std::size_t>(a)], st.xi[static_cast<std::size_t>(b)]) -
                                               (a == b ? 1.0 : 0.0)));
    push("eta_xi_duality", r_dual);

    // g(φX,φY) = g(X,Y) − Σ ε_α η^α(X)η^α(Y) on the coordinate spanning set
    auto gpp = st.g_phi_phi();
    double r_compat = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double target = st.g(i, j);
            for (int a = 0; a < st.s; ++a)
                target -= static_cast<double>(st.eps[static_cast<std::size_t>(a)]) * st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                          st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
            r_compat = std::max(r_compat, std::abs(gpp[static_cast<std::size_t>(i) * d + j] - target));
        }
    push("metric_compatibility", r_compat);

    // g(·,ξ_α) = ε_α η^α
    double r_flat = 0.0;
    for (int a = 0; a < st.s; ++a) {
        auto gxi = mat_vec(st.g.comp, st.xi[static_cast<std::size_t>(a)], d);
        for (int i = 0; i < d; ++i)
            r_flat = std::max(r_flat, std::abs(gxi[static_cast<std::size_t>(i)] -
                                               static_cast<double>(st.eps[static_cast<std::size_t>(a)]) *
                                                   st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]));
    }
    push("xi_metric_duality", r_flat);

    // g(X,φY) antisymmetric
    auto Phi = mat_mul(st.g.comp, st.phi.comp, d);
    double r_anti = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j)
            r_anti = std::max(r_anti, std::abs(Phi[static_cast<std::size_t>(i) * d + j] + Phi[static_cast<std::size_t>(j) * d + i]));
    push("phi_antisymmetry", r_anti);

    // φξ_α = 0 and η^α∘φ = 0
    double r_phixi = 0.0, r_etaphi = 0.0;
    for (int a = 0; a < st.s; ++a) {
        r_phixi = std::max(r_phixi, max_abs(st.phi_apply(st.xi[static_cast<std::size_t>(a)])));
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k)
                acc += st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] * st.phi.comp[static_cast<std::size_t>(k) * d + j];
            r_etaphi = std::max(r_etaphi, std::abs(acc));
        }
    }
    push("phi_kills_xi", r_phixi);
    push("eta_kills_phi", r_etaphi);

    // rank(φ) = 2n, measured on the eigenvalues of φᵀφ (squared singular
    // values keep machine precision near zero; sqrt would floor at √ε).
    // The s smallest must vanish; collapse of σ_{2n} is reported as residual 1.
    auto phi_gram = mat_mul(mat_transpose(st.phi.comp, d), st.phi.comp, d);
    auto ev = jacobi_eigensym(phi_gram, d).values;  // ascending
    double ev_top = std::max(1.0, ev.back());
    double r_rank = std::abs(ev[static_cast<std::size_t>(st.s - 1)]);
    if (ev[static_cast<std::size_t>(st.s)] <= kDegeneracyTol * kDegeneracyTol * ev_top)
        r_rank = 1.0;
    push("phi_rank", r_rank);

    // Im(φ) ⟂ span(ξ): g(φe_i, ξ_α) = 0
    double r_orth = 0.0;
    for (int a = 0; a < st.s; ++a) {
        auto gxi = mat_vec(st.g.comp, st.xi[static_cast<std::size_t>(a)], d);
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k) acc += st.phi.comp[static_cast<std::size_t>(k) * d + j] * gxi[static_cast<std::size_t>(k)];
            r_orth = std::max(r_orth, std::abs(acc));
        }
    }
    push("im_phi_orthogonal_xi", r_orth);

    return rep;
}

// ---------------------------------------------------------------------------
// canonical_point_structure
// ---------------------------------------------------------------------------

GffPointStructure canonical_point_structure(int n, int s, const std::vector<int>& eps,
                                            std::pair<int, int> phi_signature) {
    if (n < 1 || s < 1) throw DimensionMismatch("canonical structure: need n ≥ 1, s ≥ 1");
    if (static_cast<int>(eps.size()) != s)
        throw DimensionMismatch("canonical structure: eps length must equal s");
    if (phi_signature.first + phi_signature.second != n)
        throw DimensionMismatch("canonical structure: phi signature must satisfy p+q=n");
    const int d = 2 * n + s;

    std::vector<double> diag(static_cast<std::size_t>(d), 1.0);
    for (int i = 0; i < n; ++i) {
        double sigma = (i < phi_signature.first) ? 1.0 : -1.0;
        diag[static_cast<std::size_t>(i)] = sigma;
        diag[static_cast<std::size_t>(n + i)] = sigma;
    }
    for (int a = 0; a < s; ++a) diag[static_cast<std::size_t>(2 * n + a)] = static_cast<double>(eps[static_cast<std::size_t>(a)]);

    GffPointStructure st;
    st.n = n;
    st.s = s;
    st.eps = eps;
    st.g = MetricAtPoint::diagonal(diag);
    st.phi = TensorAtPoint::zeros(1, 1, d);
    for (int i = 0; i < n; ++i) {
        st.phi.comp[static_cast<std::size_t>(n + i) * d + i] = 1.0;   // φE_i = F_i
        st.phi.comp[static_cast<std::size_t>(i) * d + (n + i)] = -1.0;  // φF_i = −E_i
    }
    st.xi.assign(static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    st.eta.assign(static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int a = 0; a < s; ++a) {
        st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(2 * n + a)] = 1.0;
        st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(2 * n + a)] = 1.0;
    }
    return st;
}

GffPointStructure canonical_point_structure(int n, int s, const std::vector<int>& eps) {
    return canonical_point_structure(n, s, eps, {n, 0});
}

// ---------------------------------------------------------------------------
// Adapted frame
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> AdaptedFrame::all_vectors() const {
    std::vector<std::vector<double>> v;
    v.insert(v.end(), E.begin(), E.end());
    v.insert(v.end(), phiE.begin(), phiE.end());
    v.insert(v.end(), xi.begin(), xi.end());
    return v;
}

std::vector<int> AdaptedFrame::all_signs() const {
    std::vector<int> sg;
    sg.insert(sg.end(), eps_i.begin(), eps_i.end());
    sg.insert(sg.end(), eps_i.begin(), eps_i.end());
    sg.insert(sg.end(), eps_alpha.begin(), eps_alpha.end());
    return sg;
}

AdaptedFrame build_adapted_frame(const GffPointStructure& st, std::uint64_t seed) {
    const int d = st.dim();
    SeededRng rng(seed);
    auto proj = st.im_phi_projector();

    AdaptedFrame frame;
    frame.xi = st.xi;
    frame.eps_alpha = st.eps;

    double gscale = std::max(1.0, max_abs(st.g.comp));

    for (int i = 0; i < st.n; ++i) {
        // greedy pick over a batch of seeded candidates inside Im(φ)
        std::vector<double> best;
        double best_norm = 0.0;
        for (int attempt = 0; attempt < 24; ++attempt) {
            auto x = mat_vec(proj, rng.vector(d), d);
            // g-orthogonalize against previous pairs (g(x,φx)=0 holds automatically)
            for (int j = 0; j < i; ++j) {
                for (const auto* prev : {&frame.E[static_cast<std::size_t>(j)], &frame.phiE[static_cast<std::size_t>(j)]}) {
                    double c = static_cast<double>(frame.eps_i[static_cast<std::size_t>(j)]) * st.g.inner(x, *prev);
                    for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] -= c * (*prev)[static_cast<std::size_t>(k)];
                }
            }
            double scale = max_abs(x);
            if (scale == 0.0) continue;
            double q = std::abs(st.g.inner(x, x)) / (scale * scale * gscale);
            if (q > best_norm) {
                best_norm = q;
                best = std::move(x);
            }
        }
        if (best_norm <= kDegeneracyTol)
            throw DegenerateSpan("adapted frame: could not find a non-null direction in Im(φ)");

        double q = st.g.inner(best, best);
        double inv = 1.0 / std::sqrt(std::abs(q));
        for (auto& c : best) c *= inv;
        frame.E.push_back(best);
        frame.phiE.push_back(st.phi_apply(best));
        frame.eps_i.push_back(q > 0.0 ? 1 : -1);
    }
    return frame;
}

TensorAtPoint fundamental_form(const GffPointStructure& st) {
    const int d = st.dim();
    TensorAtPoint Phi = TensorAtPoint::zeros(0, 2, d);
    Phi.comp = mat_mul(st.g.comp, st.phi.comp, d);
    return Phi;
}

GffPointStructure conjugate_structure(const GffPointStructure& st, std::span<const double> L) {
    const int d = st.dim();
    auto Linv = gauss_jordan_inverse(L, d);
    GffPointStructure out = st;

    // φ' = L φ L⁻¹
    out.phi.comp = mat_mul(L, mat_mul(st.phi.comp, Linv, d), d);
    // g'(X,Y) = g(L⁻¹X, L⁻¹Y): g' = L⁻ᵀ g L⁻¹
    auto gL = mat_mul(mat_transpose(Linv, d), mat_mul(st.g.comp, Linv, d), d);
    // symmetrize away roundoff before revalidation
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) {
            double m = 0.5 * (gL[static_cast<std::size_t>(i) * d + j] + gL[static_cast<std::size_t>(j) * d + i]);
            gL[static_cast<std::size_t>(i) * d + j] = gL[static_cast<std::size_t>(j) * d + i] = m;
        }
    out.g = MetricAtPoint::from_components(d, std::move(gL));
    for (int a = 0; a < st.s; ++a) {
        out.xi[static_cast<std::size_t>(a)] = mat_vec(L, st.xi[static_cast<std::size_t>(a)], d);
        // η'^α = η^α ∘ L⁻¹  (row covector times L⁻¹)
        std::vector<double> e(static_cast<std::size_t>(d), 0.0);
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k)
                acc += st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] * Linv[static_cast<std::size_t>(k) * d + j];
            e[static_cast<std::size_t>(j)] = acc;
        }
        out.eta[static_cast<std::size_t>(a)] = std::move(e);
    }
    return out;
}

}  // namespace gff
