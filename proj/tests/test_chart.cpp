#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gff/chart.hpp"
#include "test_util.hpp"

using namespace gff;

TEST_CASE("dual numbers take exact derivatives of composite functions") {
    auto f = [](const auto* x) { return sin(x[0]) * exp(x[1]) + ipow(x[0], 3) / (1.0 + x[1] * x[1]); };
    ScalarField field = ScalarField::make(f);
    std::vector<double> p = {0.7, -0.3};

    double fx = field_partial(field, p, 0);
    double expected =
        std::cos(0.7) * std::exp(-0.3) + 3.0 * 0.7 * 0.7 / (1.0 + 0.09);
    CHECK(fx == doctest::Approx(expected).epsilon(1e-14));

    // second partial ∂_0∂_1 via two nesting orders
    std::vector<D1> p01 = {D1(0.7, 1.0), D1(-0.3, 0.0)};
    std::vector<D1> p10 = {D1(0.7, 0.0), D1(-0.3, 1.0)};
    double d01 = field_partial(field, p01, 1).d;
    double d10 = field_partial(field, p10, 0).d;
    CHECK(d01 == doctest::Approx(d10).epsilon(1e-14));
    // ∂_1∂_0 f = cos(x)exp(y) + 3x²·(−2y)/(1+y²)²
    double expected01 =
        std::cos(0.7) * std::exp(-0.3) + 3.0 * 0.49 * (0.6 / (1.09 * 1.09));
    CHECK(d01 == doctest::Approx(expected01).epsilon(1e-12));
}

TEST_CASE("third-order duals match finite differences on a smooth field") {
    auto f = [](const auto* x) { return exp(x[0] * x[1]) + cos(x[0]) * ipow(x[1], 2); };
    ScalarField field = ScalarField::make(f);

    // ∂_1∂_0∂_0 f at p: direction 0 twice (outer seeds) and direction 1 (inner seed)
    std::vector<D2> seeded(2);
    seeded[0] = D2(D1(0.4, 0.0), D1(1.0, 0.0));
    seeded[1] = D2(D1(0.2, 1.0), D1(0.0, 0.0));
    double d001 = field_partial(field, seeded, 0).d.d;

    // central finite differences of ∂_0 f in directions (0,1)
    auto d0_at = [&](double a, double b) {
        std::vector<double> q = {a, b};
        return field_partial(field, q, 0);
    };
    double h = 1e-4;
    double fd = (d0_at(0.4 + h, 0.2 + h) - d0_at(0.4 + h, 0.2 - h) - d0_at(0.4 - h, 0.2 + h) +
                 d0_at(0.4 - h, 0.2 - h)) /
                (4.0 * h * h);
    CHECK(d001 == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("mixed partials of the builtin metric fields are symmetric") {
    auto cs = builtin_chart("s_r4_lorentz");
    SeededRng rng(13);
    for (int it = 0; it < 5; ++it) {
        auto pts = sample_points(cs.metric_chart(), 1, 100 + it);
        std::vector<double> p = pts[0];
        for (int i = 0; i < cs.dim(); ++i)
            for (int j = 0; j < cs.dim(); ++j)
                for (int a = 0; a <= j; ++a)
                    for (int b = a; b < cs.dim(); ++b) {
                        const auto& f = cs.metric_chart().g_field(i, j);
                        std::vector<D1> pa(p.size()), pb(p.size());
                        for (std::size_t q = 0; q < p.size(); ++q) {
                            pa[q] = D1(p[q], static_cast<int>(q) == a ? 1.0 : 0.0);
                            pb[q] = D1(p[q], static_cast<int>(q) == b ? 1.0 : 0.0);
                        }
                        double dab = field_partial(f, pa, b).d;
                        double dba = field_partial(f, pb, a).d;
                        CHECK(std::abs(dab - dba) < 1e-10);
                    }
    }
}

TEST_CASE("christoffels vanish on a flat chart") {
    auto cs = chart_flat_gff(1, 1, {1});
    std::vector<double> p = {0.2, -0.4, 0.9};
    auto conn = christoffels(cs, p);
    CHECK(max_abs(conn.gamma) < 1e-14);
    CHECK(conn.torsion_residual() == 0.0);
}

TEST_CASE("christoffels of the polar-style metric match the hand formulas") {
    // g = diag(1, r²) in coordinates (r, θ); Γ^r_θθ = −r, Γ^θ_rθ = 1/r
    std::vector<ScalarField> g(4);
    g[0] = ScalarField::constant(1.0);
    g[1] = ScalarField::constant(0.0);
    g[2] = ScalarField::constant(0.0);
    g[3] = ScalarField::make([](const auto* x) { return x[0] * x[0]; });
    MetricChart mc(2, g, ChartBox{{0.5, -3.0}, {3.0, 3.0}});

    std::vector<double> p = {2.0, 0.3};
    auto conn = christoffels(mc, p);
    CHECK(conn.at(0, 1, 1) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(conn.at(1, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(conn.at(1, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(conn.at(0, 0, 0) == doctest::Approx(0.0));

    // finite-difference cross-check of the defining formula
    const int d = 2;
    auto ginv = gauss_jordan_inverse(mc.metric(p), d);
    double h = 1e-6;
    auto gat = [&](double r, double th, int i, int j) {
        std::vector<double> q = {r, th};
        return mc.metric(q)[i * d + j];
    };
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int l = 0; l < d; ++l) {
                    double dgi = (gat(p[0] + (i == 0) * h, p[1] + (i == 1) * h, j, l) -
                                  gat(p[0] - (i == 0) * h, p[1] - (i == 1) * h, j, l)) /
                                 (2.0 * h);
                    double dgj = (gat(p[0] + (j == 0) * h, p[1] + (j == 1) * h, i, l) -
                                  gat(p[0] - (j == 0) * h, p[1] - (j == 1) * h, i, l)) /
                                 (2.0 * h);
                    double dgl = (gat(p[0] + (l == 0) * h, p[1] + (l == 1) * h, i, j) -
                                  gat(p[0] - (l == 0) * h, p[1] - (l == 1) * h, i, j)) /
                                 (2.0 * h);
                    acc += 0.5 * ginv[k * d + l] * (dgi + dgj - dgl);
                }
                CHECK(conn.at(k, i, j) == doctest::Approx(acc).epsilon(1e-6));
            }
}

TEST_CASE("metric compatibility holds on the builtin structures") {
    auto cs = builtin_chart("s_r4_lorentz");
    for (const auto& p : sample_points(cs.metric_chart(), 5, 42))
        CHECK(metric_compatibility_residual(cs.metric_chart(), p) < 1e-10);
}

TEST_CASE("riemann tensor of a flat chart vanishes") {
    auto cs = chart_flat_gff(1, 2, {1, -1});
    std::vector<double> p = {0.1, 0.2, -0.3, 0.4};
    auto R = riemann_at_point(cs, p);
    CHECK(max_abs(R.comp) < 1e-13);
}

TEST_CASE("round-sphere metric has sectional curvature one") {
    // g = diag(1, sin²θ) on (θ, φ)
    std::vector<ScalarField> g(4);
    g[0] = ScalarField::constant(1.0);
    g[1] = ScalarField::constant(0.0);
    g[2] = ScalarField::constant(0.0);
    g[3] = ScalarField::make([](const auto* x) { return sin(x[0]) * sin(x[0]); });
    MetricChart mc(2, g, ChartBox{{0.3, -3.0}, {2.8, 3.0}});

    for (double theta : {0.5, 1.0, 1.9, 2.5}) {
        std::vector<double> p = {theta, 0.7};
        auto R = riemann_at_point(mc, p);
        CHECK(curvature_symmetry_residuals(R).max() < 1e-8);
        std::vector<double> x = {1.0, 0.0}, y = {0.0, 1.0};
        CHECK(sectional_curvature(R, x, y) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("chart curvature of the Lorentzian example matches the c=0 model tensor") {
    auto cs = builtin_chart("s_r4_lorentz");
    for (const auto& p : sample_points(cs.metric_chart(), 10, 7)) {
        auto st = cs.freeze(p);
        auto R = riemann_at_point(cs, p);
        auto Rm = build_space_form_curvature(SpaceFormParams{1, 2, {1, -1}, 0.0}, st);
        for (std::size_t m = 0; m < R.comp.size(); ++m)
            CHECK(std::abs(R.comp[m] - Rm.comp[m]) < 1e-7);
    }
}

TEST_CASE("nijenhuis tensor: flat structure and the S examples") {
    {
        auto cs = chart_flat_gff(1, 1, {1});
        std::vector<double> p = {0.0, 0.5, -0.5};
        // constant φ and constant η: both [φ,φ] and dη vanish
        CHECK(max_abs(nijenhuis_phi(cs, p).comp) < 1e-14);
        CHECK(max_abs(exterior_d_eta(cs, p, 0).comp) < 1e-14);
    }
    {
        auto cs = builtin_chart("s_r4_lorentz");
        for (const auto& p : sample_points(cs.metric_chart(), 5, 42))
            CHECK(normality_residual(cs, p) < 1e-8);
    }
}

TEST_CASE("d eta is antisymmetric and matches the fundamental form on S charts") {
    auto cs = chart_r2ns(2, 2, {1, -1});
    for (const auto& p : sample_points(cs.metric_chart(), 5, 3)) {
        for (int a = 0; a < cs.s(); ++a) {
            auto de = exterior_d_eta(cs, p, a);
            const int d = cs.dim();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    CHECK(std::abs(de.comp[i * d + j] + de.comp[j * d + i]) < 1e-12);
        }
        CHECK(check_almost_s(cs, p) < 1e-12);
    }
}

TEST_CASE("field gates: certified S structures pass, the flat structure fails almost-S") {
    for (const char* id : {"s_r4_lorentz", "s_r2ns"}) {
        auto cs = builtin_chart(id, 1, 1, {1});
        for (const auto& p : sample_points(cs.metric_chart(), 5, 11)) {
            auto rep = gate_report(cs, p);
            for (const auto& r : rep.residuals) {
                INFO(id << " gate " << r.name);
                CHECK(r.residual < 1e-7);
            }
        }
    }

    auto flat = builtin_chart("flat_gff", 1, 1, {1});
    std::vector<double> p0 = {0.0, 0.0, 0.0};
    CHECK(check_almost_s(flat, p0) >= 0.1);
    CHECK(normality_residual(flat, p0) < 1e-14);   // still normal
    CHECK(check_killing(flat, p0) < 1e-14);        // constant fields are Killing
    CHECK(check_nabla_xi(flat, p0) >= 0.1);        // but ∇ξ = 0 ≠ −εφ
    CHECK(validate_structure(flat.freeze(p0)).max_residual() < 1e-14);
}

TEST_CASE("eq-4 and eq-12 style gates hold on the parametric family") {
    for (auto [n, s, eps] : std::vector<std::tuple<int, int, std::vector<int>>>{
             {1, 1, {1}}, {2, 1, {1}}, {1, 2, {1, -1}}, {2, 2, {-1, 1}}, {1, 3, {1, -1, 1}}}) {
        auto cs = chart_r2ns(n, s, eps);
        for (const auto& p : sample_points(cs.metric_chart(), 3, 19)) {
            CHECK(check_nabla_phi(cs, p) < 1e-12);
            CHECK(check_nabla_xi(cs, p) < 1e-12);
            CHECK(check_killing(cs, p) < 1e-12);
            CHECK(check_almost_s(cs, p) < 1e-12);
            CHECK(normality_residual(cs, p) < 1e-12);
        }
    }
}

TEST_CASE("unknown example ids are rejected") {
    CHECK_THROWS_AS(builtin_chart("mystery"), UnknownExample);
}

TEST_CASE("exterior_d_eta rejects out-of-range frame indices") {
    auto cs = builtin_chart("s_r4_lorentz");
    std::vector<double> p = {0.1, 0.1, 0.1, 0.1};
    CHECK_THROWS_AS(exterior_d_eta(cs, p, 2), SlotOutOfRange);
    CHECK_THROWS_AS(exterior_d_eta(cs, p, -1), SlotOutOfRange);
}

TEST_CASE("points outside the chart box are rejected") {
    auto cs = builtin_chart("s_r4_lorentz");
    std::vector<double> p = {2.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(christoffels(cs, p), DimensionMismatch);
}

TEST_CASE("charts whose metric degenerates raise DegenerateMetric") {
    std::vector<ScalarField> g(4);
    g[0] = ScalarField::make([](const auto* x) { return x[0] * 1.0; });  // g_00 = r
    g[1] = ScalarField::constant(0.0);
    g[2] = ScalarField::constant(0.0);
    g[3] = ScalarField::constant(1.0);
    MetricChart mc(2, g, ChartBox{{-1.0, -1.0}, {1.0, 1.0}});
    std::vector<double> origin = {0.0, 0.3};
    CHECK_THROWS_AS(mc.metric_at(origin), DegenerateMetric);
    CHECK_THROWS_AS(riemann_at_point(mc, origin), DegenerateMetric);
    std::vector<double> ok = {0.5, 0.3};
    CHECK(max_abs(christoffels(mc, ok).gamma) > 0.0);
}
