#pragma once

#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "gff/dual.hpp"
#include "gff/space_form.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// Scalar component function on a coordinate box, evaluable on plain doubles
// and on dual numbers nested up to order 3.
// ---------------------------------------------------------------------------

class ScalarField {
  public:
    ScalarField() = default;

    template <class F>
    static ScalarField make(F f) {
        ScalarField s;
        s.f0_ = [f](const double* x) -> double { return f(x); };
        s.f1_ = [f](const D1* x) -> D1 { return f(x); };
        s.f2_ = [f](const D2* x) -> D2 { return f(x); };
        s.f3_ = [f](const D3* x) -> D3 { return f(x); };
        return s;
    }
    static ScalarField constant(double c) {
        return make([c](const auto* x) {
            using S = std::remove_cvref_t<decltype(x[0])>;
            (void)x;
            return S(c);
        });
    }

    double operator()(const double* x) const { return f0_(x); }
    D1 operator()(const D1* x) const { return f1_(x); }
    D2 operator()(const D2* x) const { return f2_(x); }
    D3 operator()(const D3* x) const { return f3_(x); }

    template <class S>
    S eval(const std::vector<S>& x) const { return (*this)(x.data()); }

    bool valid() const { return static_cast<bool>(f0_); }

  private:
    std::function<double(const double*)> f0_;
    std::function<D1(const D1*)> f1_;
    std::function<D2(const D2*)> f2_;
    std::function<D3(const D3*)> f3_;
};

// ∂_dir f at p; works for S = double, D1, D2 (one nesting is added internally)
template <class S>
S field_partial(const ScalarField& f, const std::vector<S>& p, int dir) {
    std::vector<Dual<S>> x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        x[i] = Dual<S>(p[i], S(static_cast<int>(i) == dir ? 1.0 : 0.0));
    return f(x.data()).d;
}

struct ChartBox {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const double> p, double slack = 1e-12) const;
};

namespace detail {
inline std::size_t i3(int a, int b, int c, int d) {
    return (static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b)) * d +
           static_cast<std::size_t>(c);
}
inline std::size_t i4(int a, int b, int c, int e, int d) {
    return ((static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b)) * d +
            static_cast<std::size_t>(c)) * d + static_cast<std::size_t>(e);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Metric-only chart: carries the connection/curvature pipeline
// ---------------------------------------------------------------------------

class MetricChart {
  public:
    MetricChart() = default;
    MetricChart(int dim, std::vector<ScalarField> g, ChartBox box);

    int dim() const { return dim_; }
    const ChartBox& box() const { return box_; }
    const ScalarField& g_field(int i, int j) const {
        return g_[static_cast<std::size_t>(i) * dim_ + j];
    }

    template <class S>
    std::vector<S> metric(const std::vector<S>& p) const {
        std::vector<S> g(static_cast<std::size_t>(dim_) * dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                g[static_cast<std::size_t>(i) * dim_ + j] = g_field(i, j).eval(p);
        return g;
    }

    MetricAtPoint metric_at(std::span<const double> p) const;

  private:
    int dim_ = 0;
    std::vector<ScalarField> g_;  // dim×dim
    ChartBox box_;
};

// Gauss-Jordan on generic scalars; pivoting compares plain values, which keeps
// derivatives exact wherever the pivot choice is locally constant.
template <class S>
std::vector<S> generic_inverse(std::vector<S> a, int n) {
    std::vector<S> inv(static_cast<std::size_t>(n) * n, S(0.0));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + i] = S(1.0);
    auto at = [n](std::vector<S>& m, int i, int j) -> S& {
        return m[static_cast<std::size_t>(i) * n + j];
    };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(val(at(a, r, col))) > std::abs(val(at(a, piv, col)))) piv = r;
        if (std::abs(val(at(a, piv, col))) < 1e-14)
            throw DegenerateMetric("chart metric inverse: pivot below tolerance");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(at(a, piv, j), at(a, col, j));
                std::swap(at(inv, piv, j), at(inv, col, j));
            }
        S d = at(a, col, col);
        for (int j = 0; j < n; ++j) {
            at(a, col, j) = at(a, col, j) / d;
            at(inv, col, j) = at(inv, col, j) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            S f = at(a, r, col);
            for (int j = 0; j < n; ++j) {
                at(a, r, j) = at(a, r, j) - f * at(a, col, j);
                at(inv, r, j) = at(inv, r, j) - f * at(inv, col, j);
            }
        }
    }
    return inv;
}

// Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij), layout [k][i][j]
template <class S>
std::vector<S> christoffel_generic(const MetricChart& mc, const std::vector<S>& p) {
    using detail::i3;
    const int d = mc.dim();
    auto ginv = generic_inverse(mc.metric(p), d);
    std::vector<S> dg(static_cast<std::size_t>(d) * d * d, S(0.0));  // [l][i][j] = ∂_l g_ij
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                S v = field_partial(mc.g_field(i, j), p, l);
                dg[i3(l, i, j, d)] = v;
                dg[i3(l, j, i, d)] = v;
            }
    std::vector<S> gamma(static_cast<std::size_t>(d) * d * d, S(0.0));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                S acc = S(0.0);
                for (int l = 0; l < d; ++l) {
                    S t = dg[i3(i, j, l, d)] + dg[i3(j, i, l, d)] - dg[i3(l, i, j, d)];
                    acc = acc + ginv[static_cast<std::size_t>(k) * d + l] * t;
                }
                acc = 0.5 * acc;
                gamma[i3(k, i, j, d)] = acc;
                gamma[i3(k, j, i, d)] = acc;
            }
    return gamma;
}

// (0,4) components R_ijkl = g_im R^m_jkl in the slot convention of space_form.hpp
template <class S>
std::vector<S> riemann_generic(const MetricChart& mc, const std::vector<S>& p) {
    using detail::i3;
    using detail::i4;
    const int d = mc.dim();
    auto g = mc.metric(p);
    auto gamma = christoffel_generic(mc, p);

    // dgamma[m][k][i][j] = ∂_m Γ^k_ij, from one nested-dual sweep per direction
    std::vector<S> dgamma(static_cast<std::size_t>(d) * d * d * d, S(0.0));
    for (int m = 0; m < d; ++m) {
        std::vector<Dual<S>> px(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            px[i] = Dual<S>(p[i], S(static_cast<int>(i) == m ? 1.0 : 0.0));
        auto gm = christoffel_generic(mc, px);
        for (std::size_t q = 0; q < gm.size(); ++q)
            dgamma[static_cast<std::size_t>(m) * d * d * d + q] = gm[q].d;
    }

    // R^m_jkl = ∂_k Γ^m_lj − ∂_l Γ^m_kj + Γ^m_ka Γ^a_lj − Γ^m_la Γ^a_kj
    std::vector<S> up(static_cast<std::size_t>(d) * d * d * d, S(0.0));
    for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    S v = dgamma[static_cast<std::size_t>(k) * d * d * d + i3(m, l, j, d)] -
                          dgamma[static_cast<std::size_t>(l) * d * d * d + i3(m, k, j, d)];
                    for (int a = 0; a < d; ++a)
                        v = v + gamma[i3(m, k, a, d)] * gamma[i3(a, l, j, d)] -
                            gamma[i3(m, l, a, d)] * gamma[i3(a, k, j, d)];
                    up[i4(m, j, k, l, d)] = v;
                }

    std::vector<S> low(static_cast<std::size_t>(d) * d * d * d, S(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    S acc = S(0.0);
                    for (int m = 0; m < d; ++m)
                        acc = acc + g[static_cast<std::size_t>(i) * d + m] * up[i4(m, j, k, l, d)];
                    low[i4(i, j, k, l, d)] = acc;
                }
    return low;
}

// Ric_ij = Σ g^{bl} R_ibjl
template <class S>
std::vector<S> ricci_generic(const MetricChart& mc, const std::vector<S>& p) {
    using detail::i4;
    const int d = mc.dim();
    auto ginv = generic_inverse(mc.metric(p), d);
    auto low = riemann_generic(mc, p);
    std::vector<S> ric(static_cast<std::size_t>(d) * d, S(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            S acc = S(0.0);
            for (int b = 0; b < d; ++b)
                for (int l = 0; l < d; ++l)
                    acc = acc + ginv[static_cast<std::size_t>(b) * d + l] * low[i4(i, b, j, l, d)];
            ric[static_cast<std::size_t>(i) * d + j] = acc;
        }
    return ric;
}

// ---------------------------------------------------------------------------
// Full chart structure: (φ, ξ_α, η^α, g) component fields on a box
// ---------------------------------------------------------------------------

class ChartStructure {
  public:
    ChartStructure() = default;
    ChartStructure(int n, int s, std::vector<int> eps, MetricChart metric,
                   std::vector<ScalarField> phi,   // dim×dim, [k*dim+j] = φ^k_j
                   std::vector<ScalarField> xi,    // s×dim, [α*dim+k] = ξ^k_α
                   std::vector<ScalarField> eta);  // s×dim, [α*dim+k] = η^α_k

    int n() const { return n_; }
    int s() const { return s_; }
    int dim() const { return 2 * n_ + s_; }
    const std::vector<int>& eps() const { return eps_; }
    const MetricChart& metric_chart() const { return metric_; }
    const ChartBox& box() const { return metric_.box(); }

    const ScalarField& phi_field(int k, int j) const {
        return phi_[static_cast<std::size_t>(k) * dim() + j];
    }
    const ScalarField& xi_field(int alpha, int k) const {
        return xi_[static_cast<std::size_t>(alpha) * dim() + k];
    }
    const ScalarField& eta_field(int alpha, int k) const {
        return eta_[static_cast<std::size_t>(alpha) * dim() + k];
    }

    template <class S>
    std::vector<S> phi_matrix(const std::vector<S>& p) const {
        const int d = dim();
        std::vector<S> m(static_cast<std::size_t>(d) * d);
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                m[static_cast<std::size_t>(k) * d + j] = phi_field(k, j).eval(p);
        return m;
    }

    // frozen pointwise structure (validated by callers via validate_structure)
    GffPointStructure freeze(std::span<const double> p) const;

  private:
    int n_ = 0, s_ = 0;
    std::vector<int> eps_;
    MetricChart metric_;
    std::vector<ScalarField> phi_, xi_, eta_;
};

// ---------------------------------------------------------------------------
// Connection / curvature at a point (double-level public API)
// ---------------------------------------------------------------------------

struct ConnectionAtPoint {
    int dim = 0;
    std::vector<double> gamma;  // [k][i][j] = Γ^k_ij
    double at(int k, int i, int j) const { return gamma[detail::i3(k, i, j, dim)]; }
    // torsion-free means symmetric lower indices; kept as an assertable residual
    double torsion_residual() const;
};

ConnectionAtPoint christoffels(const MetricChart& mc, std::span<const double> p);
ConnectionAtPoint christoffels(const ChartStructure& cs, std::span<const double> p);

// residual of ∇g = 0, evaluated from AD derivatives of g and the Γ's
double metric_compatibility_residual(const MetricChart& mc, std::span<const double> p);

CurvatureTensor riemann_at_point(const MetricChart& mc, std::span<const double> p);
CurvatureTensor riemann_at_point(const ChartStructure& cs, std::span<const double> p);

// dη^α with the ½-normalization: dη(X,Y) = ½{X(η(Y)) − Y(η(X)) − η([X,Y])}
TensorAtPoint exterior_d_eta(const ChartStructure& cs, std::span<const double> p, int alpha);

// N = [φ,φ] + 2 dη^α ⊗ ξ_α as a (1,2) tensor, [k][i][j] = N^k_ij
TensorAtPoint nijenhuis_phi(const ChartStructure& cs, std::span<const double> p);

// field-level residuals at p
double check_almost_s(const ChartStructure& cs, std::span<const double> p);
double normality_residual(const ChartStructure& cs, std::span<const double> p);
double check_nabla_phi(const ChartStructure& cs, std::span<const double> p);
double check_nabla_xi(const ChartStructure& cs, std::span<const double> p);
double check_killing(const ChartStructure& cs, std::span<const double> p);

// every gate at one point, by name
ValidationReport gate_report(const ChartStructure& cs, std::span<const double> p);

// seeded sample points inside the box; degenerate-metric points are redrawn
std::vector<std::vector<double>> sample_points(const MetricChart& mc, int count,
                                               std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Built-in examples
// ---------------------------------------------------------------------------

// ids: "flat_gff" (constant structure; valid g.f.f, not almost-S),
//      "s_r4_lorentz" (n=1, s=2, eps=(+1,−1)),
//      "s_r2ns" (parametric family on R^{2n+s})
ChartStructure builtin_chart(const std::string& id, int n = 1, int s = 1,
                             std::vector<int> eps = {1});

// the parametric family directly
ChartStructure chart_r2ns(int n, int s, const std::vector<int>& eps);
ChartStructure chart_flat_gff(int n, int s, const std::vector<int>& eps);

}  // namespace gff
