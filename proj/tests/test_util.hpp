#pragma once

#include <cmath>
#include <vector>

#include "gff/point_structure.hpp"

namespace gff::testutil {

// Independent linear-solve oracle: LU-style Gaussian elimination with partial
// pivoting, one right-hand side at a time. Deliberately separate from the
// library's Gauss-Jordan inverse.
inline std::vector<double> solve_oracle(std::vector<double> a, std::vector<double> b, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = at(r, col) / at(col, col);
            at(r, col) = 0.0;
            for (int j = col + 1; j < n; ++j) at(r, j) -= f * at(col, j);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double acc = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) acc -= at(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / at(i, i);
    }
    return x;
}

// random matrix with entries in [-sc, sc]
inline std::vector<double> random_matrix(int n, SeededRng& rng, double sc = 1.0) {
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    for (auto& v : m) v = rng.range(-sc, sc);
    return m;
}

inline double max_row_sum(const std::vector<double>& m, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += std::abs(m[static_cast<std::size_t>(i) * n + j]);
        worst = std::max(worst, acc);
    }
    return worst;
}

// well-conditioned random invertible map: I + R with ‖R‖_∞ ≤ 0.45
inline std::vector<double> random_invertible(int n, SeededRng& rng, double sc = 0.45) {
    auto m = random_matrix(n, rng);
    double f = sc / std::max(1e-9, max_row_sum(m, n));
    for (auto& v : m) v *= f;
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] += 1.0;
    return m;
}

// random isometry of g: exp(A) with A = C − g⁻¹Cᵀg, so Aᵀg + gA = 0.
// A is normalized before exponentiation; unbounded boosts would wreck the
// conditioning of conjugation tests.
inline std::vector<double> random_g_isometry(const MetricAtPoint& g, SeededRng& rng,
                                             double sc = 0.6) {
    const int n = g.dim;
    auto C = random_matrix(n, rng);
    auto ginv = gauss_jordan_inverse(g.comp, n);
    auto A = mat_mul(ginv, mat_mul(mat_transpose(C, n), g.comp, n), n);
    for (std::size_t i = 0; i < A.size(); ++i) A[i] = C[i] - A[i];
    double f = sc / std::max(1e-9, max_row_sum(A, n));
    for (auto& v : A) v *= f;
    return mat_exp(A, n);
}

// generic valid structure: canonical data pushed through a random invertible map
inline GffPointStructure random_valid_structure(int n, int s, const std::vector<int>& eps,
                                                SeededRng& rng,
                                                std::pair<int, int> phi_sig = {-1, -1}) {
    if (phi_sig.first < 0) phi_sig = {n, 0};
    auto st = canonical_point_structure(n, s, eps, phi_sig);
    return conjugate_structure(st, random_invertible(st.dim(), rng));
}

inline double frame_gram_residual(const AdaptedFrame& frame, const MetricAtPoint& g) {
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

}  // namespace gff::testutil
