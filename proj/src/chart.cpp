#include "gff/chart.hpp"

#include <algorithm>
#include <cmath>

namespace gff {

using detail::i3;
using detail::i4;

// ---------------------------------------------------------------------------
// ChartBox / MetricChart
// ---------------------------------------------------------------------------

bool ChartBox::contains(std::span<const double> p, double slack) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (p[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] - slack ||
            p[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)] + slack)
            return false;
    return true;
}

MetricChart::MetricChart(int dim, std::vector<ScalarField> g, ChartBox box)
    : dim_(dim), g_(std::move(g)), box_(std::move(box)) {
    if (static_cast<int>(g_.size()) != dim * dim)
        throw DimensionMismatch("metric chart: need dim×dim component fields");
    if (box_.dim() != dim || static_cast<int>(box_.hi.size()) != dim)
        throw DimensionMismatch("metric chart: box dim mismatch");
}

MetricAtPoint MetricChart::metric_at(std::span<const double> p) const {
    std::vector<double> pv(p.begin(), p.end());
    auto comp = metric(pv);
    // exact symmetry before validation; component fields may differ in roundoff
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < i; ++j) {
            double m = 0.5 * (comp[static_cast<std::size_t>(i) * dim_ + j] +
                              comp[static_cast<std::size_t>(j) * dim_ + i]);
            comp[static_cast<std::size_t>(i) * dim_ + j] = m;
            comp[static_cast<std::size_t>(j) * dim_ + i] = m;
        }
    return MetricAtPoint::from_components(dim_, std::move(comp));
}

// ---------------------------------------------------------------------------
// ChartStructure
// ---------------------------------------------------------------------------

ChartStructure::ChartStructure(int n, int s, std::vector<int> eps, MetricChart metric,
                               std::vector<ScalarField> phi, std::vector<ScalarField> xi,
                               std::vector<ScalarField> eta)
    : n_(n), s_(s), eps_(std::move(eps)), metric_(std::move(metric)), phi_(std::move(phi)),
      xi_(std::move(xi)), eta_(std::move(eta)) {
    const int d = 2 * n + s;
    if (n < 1 || s < 1) throw DimensionMismatch("chart structure: need n ≥ 1, s ≥ 1");
    if (static_cast<int>(eps_.size()) != s)
        throw DimensionMismatch("chart structure: eps length must equal s");
    if (metric_.dim() != d) throw DimensionMismatch("chart structure: metric dim must be 2n+s");
    if (static_cast<int>(phi_.size()) != d * d || static_cast<int>(xi_.size()) != s * d ||
        static_cast<int>(eta_.size()) != s * d)
        throw DimensionMismatch("chart structure: field counts inconsistent");
}

GffPointStructure ChartStructure::freeze(std::span<const double> p) const {
    if (!box().contains(p)) throw DimensionMismatch("freeze: point outside chart domain");
    std::vector<double> pv(p.begin(), p.end());
    const int d = dim();

    GffPointStructure st;
    st.n = n_;
    st.s = s_;
    st.eps = eps_;
    st.g = metric_.metric_at(p);
    st.phi = TensorAtPoint::zeros(1, 1, d);
    st.phi.comp = phi_matrix(pv);
    st.xi.assign(static_cast<std::size_t>(s_), std::vector<double>(static_cast<std::size_t>(d)));
    st.eta.assign(static_cast<std::size_t>(s_), std::vector<double>(static_cast<std::size_t>(d)));
    for (int a = 0; a < s_; ++a)
        for (int k = 0; k < d; ++k) {
            st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = xi_field(a, k).eval(pv);
            st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = eta_field(a, k).eval(pv);
        }
    return st;
}

// ---------------------------------------------------------------------------
// Connection / curvature
// ---------------------------------------------------------------------------

double ConnectionAtPoint::torsion_residual() const {
    double r = 0.0;
    for (int k = 0; k < dim; ++k)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < i; ++j)
                r = std::max(r, std::abs(gamma[i3(k, i, j, dim)] - gamma[i3(k, j, i, dim)]));
    return r;
}

ConnectionAtPoint christoffels(const MetricChart& mc, std::span<const double> p) {
    if (!mc.box().contains(p)) throw DimensionMismatch("christoffels: point outside domain");
    std::vector<double> pv(p.begin(), p.end());
    ConnectionAtPoint conn;
    conn.dim = mc.dim();
    conn.gamma = christoffel_generic(mc, pv);
    return conn;
}

ConnectionAtPoint christoffels(const ChartStructure& cs, std::span<const double> p) {
    return christoffels(cs.metric_chart(), p);
}

double metric_compatibility_residual(const MetricChart& mc, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = mc.dim();
    auto g = mc.metric(pv);
    auto gamma = christoffel_generic(mc, pv);
    double r = 0.0;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                double v = field_partial(mc.g_field(i, j), pv, k);
                for (int a = 0; a < d; ++a)
                    v -= gamma[i3(a, k, i, d)] * g[static_cast<std::size_t>(a) * d + j] +
                         gamma[i3(a, k, j, d)] * g[static_cast<std::size_t>(i) * d + a];
                r = std::max(r, std::abs(v));
            }
    return r;
}

CurvatureTensor riemann_at_point(const MetricChart& mc, std::span<const double> p) {
    if (!mc.box().contains(p)) throw DimensionMismatch("riemann: point outside domain");
    std::vector<double> pv(p.begin(), p.end());
    CurvatureTensor R;
    R.dim = mc.dim();
    R.metric = mc.metric_at(p);
    R.comp = riemann_generic(mc, pv);
    return R;
}

CurvatureTensor riemann_at_point(const ChartStructure& cs, std::span<const double> p) {
    return riemann_at_point(cs.metric_chart(), p);
}

// ---------------------------------------------------------------------------
// Structure-field derivatives and gates
// ---------------------------------------------------------------------------

TensorAtPoint exterior_d_eta(const ChartStructure& cs, std::span<const double> p, int alpha) {
    if (alpha < 0 || alpha >= cs.s()) throw SlotOutOfRange("exterior_d_eta: bad alpha");
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    TensorAtPoint out = TensorAtPoint::zeros(0, 2, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double v = 0.5 * (field_partial(cs.eta_field(alpha, j), pv, i) -
                              field_partial(cs.eta_field(alpha, i), pv, j));
            out.comp[static_cast<std::size_t>(i) * d + j] = v;
        }
    return out;
}

TensorAtPoint nijenhuis_phi(const ChartStructure& cs, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    auto phi = cs.phi_matrix(pv);

    // dphi[a][k][j] = ∂_a φ^k_j
    std::vector<double> dphi(static_cast<std::size_t>(d) * d * d);
    for (int a = 0; a < d; ++a)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                dphi[i3(a, k, j, d)] = field_partial(cs.phi_field(k, j), pv, a);

    TensorAtPoint out = TensorAtPoint::zeros(1, 2, d);  // [k][i][j]
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double v = 0.0;
                for (int a = 0; a < d; ++a) {
                    v += phi[static_cast<std::size_t>(a) * d + i] * dphi[i3(a, k, j, d)] -
                         phi[static_cast<std::size_t>(a) * d + j] * dphi[i3(a, k, i, d)] +
                         dphi[i3(j, a, i, d)] * phi[static_cast<std::size_t>(k) * d + a] -
                         dphi[i3(i, a, j, d)] * phi[static_cast<std::size_t>(k) * d + a];
                }
                out.comp[i3(k, i, j, d)] = v;
            }

    for (int alpha = 0; alpha < cs.s(); ++alpha) {
        auto de = exterior_d_eta(cs, p, alpha);
        for (int k = 0; k < d; ++k) {
            double xik = cs.xi_field(alpha, k).eval(pv);
            if (xik == 0.0) continue;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    out.comp[i3(k, i, j, d)] +=
                        2.0 * de.comp[static_cast<std::size_t>(i) * d + j] * xik;
        }
    }
    return out;
}

double check_almost_s(const ChartStructure& cs, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    auto g = cs.metric_chart().metric(pv);
    auto phi = cs.phi_matrix(pv);
    auto Phi = mat_mul(g, phi, d);
    double r = 0.0;
    for (int alpha = 0; alpha < cs.s(); ++alpha) {
        auto de = exterior_d_eta(cs, p, alpha);
        for (std::size_t m = 0; m < Phi.size(); ++m)
            r = std::max(r, std::abs(Phi[m] - de.comp[m]));
    }
    return r;
}

double normality_residual(const ChartStructure& cs, std::span<const double> p) {
    return max_abs(nijenhuis_phi(cs, p).comp);
}

namespace {

// ∇_i v^k for a vector field given by component fields
std::vector<double> covariant_derivative_vector(const ChartStructure& cs,
                                                const std::vector<double>& pv,
                                                const std::vector<double>& gamma, int alpha) {
    const int d = cs.dim();
    std::vector<double> nabla(static_cast<std::size_t>(d) * d);  // [i][k] = ∇_i ξ^k
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            double v = field_partial(cs.xi_field(alpha, k), pv, i);
            for (int a = 0; a < d; ++a)
                v += gamma[i3(k, i, a, d)] * cs.xi_field(alpha, a).eval(pv);
            nabla[static_cast<std::size_t>(i) * d + k] = v;
        }
    return nabla;
}

}  // namespace

double check_nabla_phi(const ChartStructure& cs, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    auto g = cs.metric_chart().metric(pv);
    auto phi = cs.phi_matrix(pv);
    auto gamma = christoffel_generic(cs.metric_chart(), pv);

    // g(φ·,φ·), η̄, ξ̄, φ²
    auto gphi = mat_mul(g, phi, d);
    auto G1 = mat_mul(mat_transpose(phi, d), gphi, d);
    std::vector<double> etabar(static_cast<std::size_t>(d), 0.0), xibar(static_cast<std::size_t>(d), 0.0);
    for (int a = 0; a < cs.s(); ++a)
        for (int k = 0; k < d; ++k) {
            etabar[static_cast<std::size_t>(k)] +=
                static_cast<double>(cs.eps()[static_cast<std::size_t>(a)]) * cs.eta_field(a, k).eval(pv);
            xibar[static_cast<std::size_t>(k)] += cs.xi_field(a, k).eval(pv);
        }
    auto phi2 = mat_mul(phi, phi, d);

    double r = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                // (∇_i φ)^k_j = ∂_i φ^k_j + Γ^k_ia φ^a_j − Γ^a_ij φ^k_a
                double v = field_partial(cs.phi_field(k, j), pv, i);
                for (int a = 0; a < d; ++a)
                    v += gamma[i3(k, i, a, d)] * phi[static_cast<std::size_t>(a) * d + j] -
                         gamma[i3(a, i, j, d)] * phi[static_cast<std::size_t>(k) * d + a];
                double target = G1[static_cast<std::size_t>(i) * d + j] * xibar[static_cast<std::size_t>(k)] +
                                etabar[static_cast<std::size_t>(j)] * phi2[static_cast<std::size_t>(k) * d + i];
                r = std::max(r, std::abs(v - target));
            }
    return r;
}

double check_nabla_xi(const ChartStructure& cs, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    auto phi = cs.phi_matrix(pv);
    auto gamma = christoffel_generic(cs.metric_chart(), pv);
    double r = 0.0;
    for (int alpha = 0; alpha < cs.s(); ++alpha) {
        auto nabla = covariant_derivative_vector(cs, pv, gamma, alpha);
        double ea = static_cast<double>(cs.eps()[static_cast<std::size_t>(alpha)]);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                r = std::max(r, std::abs(nabla[static_cast<std::size_t>(i) * d + k] +
                                         ea * phi[static_cast<std::size_t>(k) * d + i]));
    }
    return r;
}

double check_killing(const ChartStructure& cs, std::span<const double> p) {
    std::vector<double> pv(p.begin(), p.end());
    const int d = cs.dim();
    auto g = cs.metric_chart().metric(pv);
    auto gamma = christoffel_generic(cs.metric_chart(), pv);
    double r = 0.0;
    for (int alpha = 0; alpha < cs.s(); ++alpha) {
        auto nabla = covariant_derivative_vector(cs, pv, gamma, alpha);
        // (L_ξ g)_ij = g(∇_i ξ, ∂_j) + g(∂_i, ∇_j ξ)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                double v = 0.0;
                for (int k = 0; k < d; ++k)
                    v += nabla[static_cast<std::size_t>(i) * d + k] * g[static_cast<std::size_t>(k) * d + j] +
                         nabla[static_cast<std::size_t>(j) * d + k] * g[static_cast<std::size_t>(i) * d + k];
                r = std::max(r, std::abs(v));
            }
    }
    return r;
}

ValidationReport gate_report(const ChartStructure& cs, std::span<const double> p) {
    ValidationReport rep = validate_structure(cs.freeze(p));
    double vmax = rep.max_residual();
    rep.residuals.clear();
    rep.residuals.push_back({"structure_axioms", vmax});
    rep.residuals.push_back({"almost_s", check_almost_s(cs, p)});
    rep.residuals.push_back({"normality", normality_residual(cs, p)});
    rep.residuals.push_back({"nabla_phi", check_nabla_phi(cs, p)});
    rep.residuals.push_back({"nabla_xi", check_nabla_xi(cs, p)});
    rep.residuals.push_back({"killing", check_killing(cs, p)});
    return rep;
}

std::vector<std::vector<double>> sample_points(const MetricChart& mc, int count,
                                               std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<std::vector<double>> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 100 * count + 100)
            throw DegenerateMetric("sample_points: could not draw nondegenerate points");
        std::vector<double> p(static_cast<std::size_t>(mc.dim()));
        for (int i = 0; i < mc.dim(); ++i)
            p[static_cast<std::size_t>(i)] = rng.range(mc.box().lo[static_cast<std::size_t>(i)],
                                                       mc.box().hi[static_cast<std::size_t>(i)]);
        try {
            (void)mc.metric_at(p);
        } catch (const DegenerateMetric&) {
            continue;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

ChartStructure chart_flat_gff(int n, int s, const std::vector<int>& eps) {
    auto st = canonical_point_structure(n, s, eps);
    const int d = st.dim();
    ChartBox box{std::vector<double>(static_cast<std::size_t>(d), -1.0),
                 std::vector<double>(static_cast<std::size_t>(d), 1.0)};

    std::vector<ScalarField> g(static_cast<std::size_t>(d) * d);
    std::vector<ScalarField> phi(static_cast<std::size_t>(d) * d);
    std::vector<ScalarField> xi(static_cast<std::size_t>(s) * d);
    std::vector<ScalarField> eta(static_cast<std::size_t>(s) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            g[static_cast<std::size_t>(i) * d + j] = ScalarField::constant(st.g(i, j));
            phi[static_cast<std::size_t>(i) * d + j] =
                ScalarField::constant(st.phi.comp[static_cast<std::size_t>(i) * d + j]);
        }
    for (int a = 0; a < s; ++a)
        for (int k = 0; k < d; ++k) {
            xi[static_cast<std::size_t>(a) * d + k] =
                ScalarField::constant(st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]);
            eta[static_cast<std::size_t>(a) * d + k] =
                ScalarField::constant(st.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]);
        }
    return ChartStructure(n, s, eps, MetricChart(d, std::move(g), box), std::move(phi),
                          std::move(xi), std::move(eta));
}

// Classical structure on R^{2n+s}, coordinates (x^1..x^n, y^1..y^n, z^1..z^s):
//   η^α = ½(dz^α − Σ_i y^i dx^i),   ξ_α = 2 ∂_{z^α},
//   φ∂_{x^i} = −∂_{y^i},  φ∂_{y^i} = ∂_{x^i} + y^i Σ_β ∂_{z^β},  φ∂_{z^α} = 0,
//   g = Σ_α ε_α η^α⊗η^α + ¼ Σ_i (dx^i⊗dx^i + dy^i⊗dy^i).
// The ε-signed variant keeps every structure identity exact; its φ-sectional
// curvature is the constant −3·Σ ε_α.
ChartStructure chart_r2ns(int n, int s, const std::vector<int>& eps) {
    if (n < 1 || s < 1 || static_cast<int>(eps.size()) != s)
        throw DimensionMismatch("chart_r2ns: need n ≥ 1, s ≥ 1 and |eps| = s");
    const int d = 2 * n + s;
    double eps_sum = 0.0;
    for (int e : eps) eps_sum += static_cast<double>(e);

    ChartBox box{std::vector<double>(static_cast<std::size_t>(d), -1.0),
                 std::vector<double>(static_cast<std::size_t>(d), 1.0)};

    std::vector<ScalarField> g(static_cast<std::size_t>(d) * d, ScalarField::constant(0.0));
    auto gset = [&](int i, int j, ScalarField f) {
        g[static_cast<std::size_t>(i) * d + j] = f;
        g[static_cast<std::size_t>(j) * d + i] = f;
    };
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            double delta = (k == l) ? 1.0 : 0.0;
            gset(k, l, ScalarField::make([=](const auto* x) {
                     return 0.25 * (delta + eps_sum * x[n + k] * x[n + l]);
                 }));
        }
        gset(n + k, n + k, ScalarField::constant(0.25));
        for (int a = 0; a < s; ++a) {
            double ea = static_cast<double>(eps[static_cast<std::size_t>(a)]);
            gset(k, 2 * n + a, ScalarField::make([=](const auto* x) {
                     return -0.25 * ea * x[n + k];
                 }));
        }
    }
    for (int a = 0; a < s; ++a)
        gset(2 * n + a, 2 * n + a,
             ScalarField::constant(0.25 * static_cast<double>(eps[static_cast<std::size_t>(a)])));

    std::vector<ScalarField> phi(static_cast<std::size_t>(d) * d, ScalarField::constant(0.0));
    for (int i = 0; i < n; ++i) {
        phi[static_cast<std::size_t>(n + i) * d + i] = ScalarField::constant(-1.0);  // φ∂_x = −∂_y
        phi[static_cast<std::size_t>(i) * d + (n + i)] = ScalarField::constant(1.0);  // φ∂_y ∋ ∂_x
        for (int b = 0; b < s; ++b)
            phi[static_cast<std::size_t>(2 * n + b) * d + (n + i)] =
                ScalarField::make([=](const auto* x) { return x[n + i] * 1.0; });
    }

    std::vector<ScalarField> xi(static_cast<std::size_t>(s) * d, ScalarField::constant(0.0));
    std::vector<ScalarField> eta(static_cast<std::size_t>(s) * d, ScalarField::constant(0.0));
    for (int a = 0; a < s; ++a) {
        xi[static_cast<std::size_t>(a) * d + (2 * n + a)] = ScalarField::constant(2.0);
        eta[static_cast<std::size_t>(a) * d + (2 * n + a)] = ScalarField::constant(0.5);
        for (int i = 0; i < n; ++i)
            eta[static_cast<std::size_t>(a) * d + i] =
                ScalarField::make([=](const auto* x) { return -0.5 * x[n + i]; });
    }
    return ChartStructure(n, s, eps, MetricChart(d, std::move(g), box), std::move(phi),
                          std::move(xi), std::move(eta));
}

ChartStructure builtin_chart(const std::string& id, int n, int s, std::vector<int> eps) {
    if (id == "flat_gff") return chart_flat_gff(n, s, eps);
    if (id == "s_r4_lorentz") return chart_r2ns(1, 2, {1, -1});
    if (id == "s_r2ns") return chart_r2ns(n, s, eps);
    throw UnknownExample("unknown chart example: " + id);
}

}  // namespace gff
