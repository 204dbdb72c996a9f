#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "gff/tensor.hpp"
#include "test_util.hpp"

using namespace gff;

TEST_CASE("seeded rng is deterministic and in range") {
    SeededRng a(7), b(7), c(8);
    for (int i = 0; i < 100; ++i) {
        double va = a.unit();
        CHECK(va == b.unit());
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
    bool differs = false;
    SeededRng a2(7);
    for (int i = 0; i < 10; ++i) differs |= (a2.unit() != c.unit());
    CHECK(differs);
}

TEST_CASE("jacobi eigensym reconstructs the matrix") {
    SeededRng rng(3);
    const int n = 6;
    auto m = testutil::random_matrix(n, rng);
    // symmetrize
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v = 0.5 * (m[i * n + j] + m[j * n + i]);
            m[i * n + j] = m[j * n + i] = v;
        }
    auto eig = jacobi_eigensym(m, n);
    // A v_j = λ_j v_j
    for (int j = 0; j < n; ++j) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = eig.vectors[i * n + j];
        auto av = mat_vec(m, v, n);
        for (int i = 0; i < n; ++i)
            CHECK(av[i] == doctest::Approx(eig.values[j] * v[i]).epsilon(1e-10));
    }
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
}

TEST_CASE("metric construction checks symmetry, degeneracy and signature") {
    auto g = MetricAtPoint::diagonal({1.0, 1.0, -1.0});
    CHECK(g.signature.first == 2);
    CHECK(g.signature.second == 1);

    std::vector<double> asym = {1.0, 0.5, 0.0, 1.0};
    CHECK_THROWS_AS(MetricAtPoint::from_components(2, asym), DimensionMismatch);

    std::vector<double> dgn = {1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(MetricAtPoint::from_components(2, dgn), DegenerateMetric);

    // the inverse guards degeneracy even on a hand-assembled metric struct
    MetricAtPoint raw;
    raw.dim = 2;
    raw.comp = dgn;
    raw.signature = {2, 0};
    CHECK_THROWS_AS(metric_inverse(raw), DegenerateMetric);
}

TEST_CASE("metric_inverse: identity and involutive diagonal") {
    auto id = MetricAtPoint::diagonal({1.0, 1.0, 1.0});
    auto inv = metric_inverse(id);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(inv[i * 3 + j] == doctest::Approx(i == j ? 1.0 : 0.0));

    auto l = MetricAtPoint::diagonal({1.0, 1.0, -1.0});
    auto linv = metric_inverse(l);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(linv[i * 3 + j] == doctest::Approx(l(i, j)).epsilon(1e-14));
}

TEST_CASE("metric_inverse matches a column-wise linear-solve oracle") {
    SeededRng rng(11);
    const int n = 5;
    auto m = testutil::random_matrix(n, rng);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            double v = 0.5 * (m[i * n + j] + m[j * n + i]);
            m[i * n + j] = m[j * n + i] = v;
        }
        m[i * n + i] += 3.0;  // keep it solidly nondegenerate
    }
    auto g = MetricAtPoint::from_components(n, m);
    auto inv = metric_inverse(g);

    // oracle: solve g·x = e_col per column
    for (int col = 0; col < n; ++col) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        auto x = testutil::solve_oracle(m, e, n);
        for (int i = 0; i < n; ++i) CHECK(inv[i * n + col] == doctest::Approx(x[i]).epsilon(1e-10));
    }

    // product with g is the identity to 1e-10
    auto prod = mat_mul(g.comp, inv, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(prod[i * n + j] - (i == j ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("lower_index with the identity metric keeps components") {
    auto g = MetricAtPoint::diagonal({1.0, 1.0, 1.0});
    TensorAtPoint v = TensorAtPoint::zeros(1, 0, 3);
    v.comp = {2.0, -1.0, 0.5};
    auto flat = lower_index(v, 0, g);
    CHECK(flat.contrav == 0);
    CHECK(flat.cov == 1);
    for (int i = 0; i < 3; ++i) CHECK(flat.comp[i] == doctest::Approx(v.comp[i]));
}

TEST_CASE("lowering xi gives eps·eta on canonical structures") {
    for (auto eps : {std::vector<int>{1, -1}, std::vector<int>{-1, 1}, std::vector<int>{1, 1}}) {
        auto st = canonical_point_structure(2, 2, eps);
        for (int a = 0; a < st.s; ++a) {
            TensorAtPoint x = TensorAtPoint::zeros(1, 0, st.dim());
            x.comp = st.xi[a];
            auto flat = lower_index(x, 0, st.g);
            for (int i = 0; i < st.dim(); ++i)
                CHECK(flat.comp[i] ==
                      doctest::Approx(static_cast<double>(eps[a]) * st.eta[a][i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("raise∘lower is the identity on random (1,1) tensors") {
    SeededRng rng(5);
    const int n = 4;
    for (int it = 0; it < 20; ++it) {
        auto m = testutil::random_matrix(n, rng);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                double v = 0.5 * (m[i * n + j] + m[j * n + i]);
                m[i * n + j] = m[j * n + i] = v;
            }
            m[i * n + i] += 2.5 * (i % 2 == 0 ? 1.0 : -1.0);  // indefinite, nondegenerate
        }
        auto g = MetricAtPoint::from_components(n, m);
        TensorAtPoint t = TensorAtPoint::zeros(1, 1, n);
        for (auto& v : t.comp) v = rng.range(-1.0, 1.0);
        auto back = raise_index(lower_index(t, 0, g), 0, g);
        for (std::size_t k = 0; k < t.comp.size(); ++k)
            CHECK(std::abs(back.comp[k] - t.comp[k]) < 1e-10);
    }
}

TEST_CASE("index shift rejects wrong slots") {
    auto g = MetricAtPoint::diagonal({1.0, -1.0});
    TensorAtPoint t = TensorAtPoint::zeros(1, 1, 2);
    CHECK_THROWS_AS(lower_index(t, 1, g), SlotOutOfRange);
    CHECK_THROWS_AS(raise_index(t, 0, g), SlotOutOfRange);
}

TEST_CASE("contract: identity (1,1) tensor traces to the dimension") {
    auto g = MetricAtPoint::diagonal({1.0, 1.0, -1.0, -1.0});
    TensorAtPoint t = TensorAtPoint::zeros(1, 1, 4);
    for (int i = 0; i < 4; ++i) t.comp[i * 4 + i] = 1.0;
    auto tr = contract(t, 0, 1, g);
    CHECK(tr.rank() == 0);
    CHECK(tr.comp[0] == doctest::Approx(4.0));
}

TEST_CASE("contract: antisymmetric form traces to zero") {
    auto st = canonical_point_structure(2, 1, {1});
    auto Phi = fundamental_form(st);
    auto tr = contract(Phi, 0, 1, st.g);
    CHECK(std::abs(tr.comp[0]) < 1e-14);
}

TEST_CASE("contract: g-trace of g matches the explicit-loop oracle") {
    for (auto diag : {std::vector<double>{1, 1, 1}, std::vector<double>{1, 1, -1},
                      std::vector<double>{1, -1, -1, 1, -1}}) {
        auto g = MetricAtPoint::diagonal(diag);
        const int n = g.dim;
        TensorAtPoint t = TensorAtPoint::zeros(0, 2, n);
        t.comp = g.comp;
        auto tr = contract(t, 0, 1, g);

        // oracle: explicit Σ_ab g^{ab} g_ab with an independently computed inverse
        double oracle = 0.0;
        for (int col = 0; col < n; ++col) {
            std::vector<double> e(n, 0.0);
            e[col] = 1.0;
            auto x = testutil::solve_oracle(g.comp, e, n);  // column of g⁻¹
            for (int a = 0; a < n; ++a) oracle += x[a] * g(a, col);
        }
        CHECK(tr.comp[0] == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(tr.comp[0] == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    }
}

TEST_CASE("contract pairs two contravariant slots with the metric itself") {
    auto g = MetricAtPoint::diagonal({1.0, -1.0, 1.0});
    SeededRng rng(61);
    auto u = rng.vector(3);
    auto v = rng.vector(3);
    TensorAtPoint t = TensorAtPoint::zeros(2, 0, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t.comp[a * 3 + b] = u[a] * v[b];
    auto tr = contract(t, 0, 1, g);
    CHECK(tr.comp[0] == doctest::Approx(g.inner(u, v)).epsilon(1e-12));
}

TEST_CASE("contract is linear and frame independent") {
    SeededRng rng(23);
    auto st = canonical_point_structure(2, 1, {1});
    auto g = st.g;
    const int n = g.dim;

    TensorAtPoint t = TensorAtPoint::zeros(0, 2, n);
    TensorAtPoint u = TensorAtPoint::zeros(0, 2, n);
    for (auto& v : t.comp) v = rng.range(-1.0, 1.0);
    for (auto& v : u.comp) v = rng.range(-1.0, 1.0);

    TensorAtPoint lin = TensorAtPoint::zeros(0, 2, n);
    for (std::size_t k = 0; k < lin.comp.size(); ++k) lin.comp[k] = 2.0 * t.comp[k] - 3.0 * u.comp[k];
    double a = contract(t, 0, 1, g).comp[0];
    double b = contract(u, 0, 1, g).comp[0];
    CHECK(contract(lin, 0, 1, g).comp[0] == doctest::Approx(2.0 * a - 3.0 * b).epsilon(1e-12));

    // conjugating by a g-isometry leaves the scalar unchanged
    auto Q = testutil::random_g_isometry(g, rng);
    TensorAtPoint tq = TensorAtPoint::zeros(0, 2, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    acc += Q[k * n + i] * Q[l * n + j] * t.comp[k * n + l];
            tq.comp[i * n + j] = acc;
        }
    CHECK(contract(tq, 0, 1, g).comp[0] == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("orthonormalize: standard basis under the identity metric") {
    auto g = MetricAtPoint::diagonal({1.0, 1.0, 1.0});
    std::vector<std::vector<double>> basis = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto frame = orthonormalize_indefinite(basis, g);
    REQUIRE(frame.vectors.size() == 3);
    for (int s : frame.signs) CHECK(s == 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(g.inner(frame.vectors[a], frame.vectors[b]) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
}

namespace {

// eigen-decomposition oracle for the restricted signature of span(vectors)
std::pair<int, int> span_signature_oracle(const std::vector<std::vector<double>>& vectors,
                                          const MetricAtPoint& g) {
    const int m = static_cast<int>(vectors.size());
    std::vector<double> gram(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) gram[a * m + b] = g.inner(vectors[a], vectors[b]);
    auto eig = jacobi_eigensym(gram, m);
    int pos = 0, neg = 0;
    for (double v : eig.values) (v > 0 ? pos : neg)++;
    return {pos, neg};
}

}  // namespace

TEST_CASE("orthonormalize: mixed-sign span matches the eigen oracle") {
    auto g = MetricAtPoint::diagonal({1.0, -1.0});
    std::vector<std::vector<double>> vecs = {{1, 1}, {0, 1}};
    auto frame = orthonormalize_indefinite(vecs, g);
    REQUIRE(frame.vectors.size() == 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double target = (a == b) ? static_cast<double>(frame.signs[a]) : 0.0;
            CHECK(g.inner(frame.vectors[a], frame.vectors[b]) ==
                  doctest::Approx(target).epsilon(1e-12));
        }
    auto sig = span_signature_oracle(vecs, g);
    int pos = 0, neg = 0;
    for (int s : frame.signs) (s > 0 ? pos : neg)++;
    CHECK(pos == sig.first);
    CHECK(neg == sig.second);
}

TEST_CASE("orthonormalize: a null pair succeeds through pivoted recombination") {
    auto g = MetricAtPoint::diagonal({1.0, -1.0});
    std::vector<std::vector<double>> vecs = {{1, 1}, {1, -1}};
    auto frame = orthonormalize_indefinite(vecs, g);
    REQUIRE(frame.vectors.size() == 2);
    std::vector<int> signs = frame.signs;
    std::sort(signs.begin(), signs.end());
    CHECK(signs[0] == -1);
    CHECK(signs[1] == 1);
    auto sig = span_signature_oracle(vecs, g);
    CHECK(sig.first == 1);
    CHECK(sig.second == 1);
}

TEST_CASE("orthonormalize: degenerate span is rejected") {
    auto g = MetricAtPoint::diagonal({1.0, -1.0, 1.0});
    // span{e1+e2} is g-null, and no pair-sum can rescue a single null vector
    std::vector<std::vector<double>> vecs = {{1, 1, 0}};
    CHECK_THROWS_AS(orthonormalize_indefinite(vecs, g), DegenerateSpan);
}

TEST_CASE("orthonormalize property: Gram is ±1 diagonal, signs match the restricted signature") {
    SeededRng rng(31);
    auto g = MetricAtPoint::diagonal({1.0, 1.0, -1.0, 1.0, -1.0});
    for (int it = 0; it < 25; ++it) {
        int m = 2 + rng.pick(3);
        std::vector<std::vector<double>> vecs;
        for (int i = 0; i < m; ++i) vecs.push_back(rng.vector(5));
        std::pair<int, int> sig;
        try {
            sig = span_signature_oracle(vecs, g);
        } catch (...) {
            continue;  // randomly degenerate span, not the property under test
        }
        auto frame = orthonormalize_indefinite(vecs, g);
        for (std::size_t a = 0; a < frame.vectors.size(); ++a)
            for (std::size_t b = 0; b < frame.vectors.size(); ++b) {
                double target = (a == b) ? static_cast<double>(frame.signs[a]) : 0.0;
                CHECK(std::abs(g.inner(frame.vectors[a], frame.vectors[b]) - target) < 1e-10);
            }
        int pos = 0, neg = 0;
        for (int s : frame.signs) (s > 0 ? pos : neg)++;
        CHECK(pos == sig.first);
        CHECK(neg == sig.second);
    }
}
