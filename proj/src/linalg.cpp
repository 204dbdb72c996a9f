#include "gff/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gff {

// ---------------------------------------------------------------------------
// SeededRng: minimal mt19937_64 core (standardized constants, so the stream
// is identical on every platform)
// ---------------------------------------------------------------------------

namespace {
constexpr int kNN = 312;
constexpr int kMM = 156;
constexpr std::uint64_t kMatrixA = 0xB5026F5AA96619E9ULL;
constexpr std::uint64_t kUpperMask = 0xFFFFFFFF80000000ULL;
constexpr std::uint64_t kLowerMask = 0x7FFFFFFFULL;
}  // namespace

SeededRng::SeededRng(std::uint64_t seed) {
    state_[0] = seed;
    for (int i = 1; i < kNN; ++i) {
        state_[i] = 6364136223846793005ULL * (state_[i - 1] ^ (state_[i - 1] >> 62)) +
                    static_cast<std::uint64_t>(i);
    }
    index_ = kNN;
}

void SeededRng::refill() {
    for (int i = 0; i < kNN; ++i) {
        std::uint64_t x = (state_[i] & kUpperMask) | (state_[(i + 1) % kNN] & kLowerMask);
        std::uint64_t xa = x >> 1;
        if (x & 1ULL) xa ^= kMatrixA;
        state_[i] = state_[(i + kMM) % kNN] ^ xa;
    }
    index_ = 0;
}

std::uint64_t SeededRng::next_u64() {
    if (index_ >= kNN) refill();
    std::uint64_t x = state_[index_++];
    x ^= (x >> 29) & 0x5555555555555555ULL;
    x ^= (x << 17) & 0x71D67FFFEDA60000ULL;
    x ^= (x << 37) & 0xFFF7EEE000000000ULL;
    x ^= x >> 43;
    return x;
}

double SeededRng::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::range(double lo, double hi) { return lo + (hi - lo) * unit(); }

int SeededRng::pick(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

std::vector<double> SeededRng::vector(int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (auto& c : v) c = range(-1.0, 1.0);
    return v;
}

// ---------------------------------------------------------------------------
// Matrix helpers
// ---------------------------------------------------------------------------

std::vector<double> mat_identity(int n) {
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 1.0;
    return a;
}

std::vector<double> mat_mul(std::span<const double> a, std::span<const double> b, int n) {
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = a[static_cast<std::size_t>(i) * n + k];
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j)
                c[static_cast<std::size_t>(i) * n + j] += aik * b[static_cast<std::size_t>(k) * n + j];
        }
    return c;
}

std::vector<double> mat_vec(std::span<const double> a, std::span<const double> x, int n) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a[static_cast<std::size_t>(i) * n + j] * x[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

std::vector<double> mat_transpose(std::span<const double> a, int n) {
    std::vector<double> t(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[static_cast<std::size_t>(j) * n + i] = a[static_cast<std::size_t>(i) * n + j];
    return t;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double symmetry_residual(std::span<const double> a, int n) {
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r = std::max(r, std::abs(a[static_cast<std::size_t>(i) * n + j] -
                                     a[static_cast<std::size_t>(j) * n + i]));
    return r;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double form_value(std::span<const double> g, std::span<const double> x,
                  std::span<const double> y, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        for (int j = 0; j < n; ++j)
            acc += xi * g[static_cast<std::size_t>(i) * n + j] * y[static_cast<std::size_t>(j)];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver
// ---------------------------------------------------------------------------

EigenSym jacobi_eigensym(std::span<const double> a_in, int n) {
    if (static_cast<int>(a_in.size()) != n * n)
        throw DimensionMismatch("jacobi_eigensym: bad matrix size");
    std::vector<double> a(a_in.begin(), a_in.end());
    std::vector<double> v = mat_identity(n);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto vt = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    double scale = max_abs(a);
    if (scale == 0.0) scale = 1.0;
    const double tol = 1e-15 * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
        if (off < tol) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < tol * 1e-2) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = vt(k, p), vkq = vt(k, q);
                    vt(k, p) = c * vkp - s * vkq;
                    vt(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return at(i, i) < at(j, j); });

    EigenSym out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        int src = order[static_cast<std::size_t>(j)];
        out.values[static_cast<std::size_t>(j)] = at(src, src);
        for (int i = 0; i < n; ++i)
            out.vectors[static_cast<std::size_t>(i) * n + j] = vt(i, src);
    }
    return out;
}

std::vector<double> singular_values(std::span<const double> a, int n) {
    auto at2 = mat_mul(mat_transpose(a, n), std::vector<double>(a.begin(), a.end()), n);
    auto eig = jacobi_eigensym(at2, n);
    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(n - 1 - i)]));
    return sv;
}

std::pair<int, int> symmetric_signature(std::span<const double> g, int n, double rel_tol) {
    auto eig = jacobi_eigensym(g, n);
    double scale = 0.0;
    for (double v : eig.values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw DegenerateMetric("signature: zero matrix");
    int pos = 0, neg = 0;
    for (double v : eig.values) {
        if (std::abs(v) <= rel_tol * scale)
            throw DegenerateMetric("signature: eigenvalue below degeneracy tolerance");
        (v > 0.0 ? pos : neg)++;
    }
    return {pos, neg};
}

std::vector<double> gauss_jordan_inverse(std::span<const double> a_in, int n, double rel_tol) {
    std::vector<double> a(a_in.begin(), a_in.end());
    std::vector<double> inv = mat_identity(n);
    double scale = max_abs(a);
    if (scale == 0.0) throw DegenerateMetric("inverse: zero matrix");
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto bt = [&](int i, int j) -> double& { return inv[static_cast<std::size_t>(i) * n + j]; };

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (std::abs(at(piv, col)) <= rel_tol * scale)
            throw DegenerateMetric("inverse: pivot below tolerance");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(piv, j), at(col, j));
                std::swap(bt(piv, j), bt(col, j));
            }
        }
        double d = at(col, col);
        for (int j = 0; j < n; ++j) {
            at(col, j) /= d;
            bt(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = at(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                at(r, j) -= f * at(col, j);
                bt(r, j) -= f * bt(col, j);
            }
        }
    }
    return inv;
}

std::vector<double> mat_exp(std::span<const double> a_in, int n) {
    std::vector<double> a(a_in.begin(), a_in.end());
    double norm = max_abs(a);
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    double f = std::ldexp(1.0, -squarings);
    for (auto& v : a) v *= f;

    std::vector<double> result = mat_identity(n);
    std::vector<double> term = mat_identity(n);
    for (int k = 1; k <= 16; ++k) {
        term = mat_mul(term, a, n);
        for (auto& v : term) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < result.size(); ++i) result[i] += term[i];
    }
    for (int k = 0; k < squarings; ++k) result = mat_mul(result, result, n);
    return result;
}

}  // namespace gff
