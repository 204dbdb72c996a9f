#include "gff/space_form.hpp"

#include <algorithm>
#include <cmath>

namespace gff {

// ---------------------------------------------------------------------------
// CurvatureTensor
// ---------------------------------------------------------------------------

double CurvatureTensor::value(std::span<const double> x, std::span<const double> y,
                              std::span<const double> z, std::span<const double> w) const {
    // contract one slot at a time; a 4-deep product per entry costs 4x more
    const int d = dim;
    std::vector<double> rw(static_cast<std::size_t>(d) * d * d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double acc = 0.0;
                const std::size_t base = ((static_cast<std::size_t>(i) * d + j) * d + k) * d;
                for (int l = 0; l < d; ++l) acc += comp[base + l] * w[static_cast<std::size_t>(l)];
                rw[(static_cast<std::size_t>(i) * d + j) * d + k] = acc;
            }
    double out = 0.0;
    for (int i = 0; i < d; ++i) {
        double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            double yj = y[static_cast<std::size_t>(j)];
            if (yj == 0.0) continue;
            double acc = 0.0;
            for (int k = 0; k < d; ++k)
                acc += rw[(static_cast<std::size_t>(i) * d + j) * d + k] * z[static_cast<std::size_t>(k)];
            out += xi * yj * acc;
        }
    }
    return out;
}

TensorAtPoint CurvatureTensor::as_tensor() const {
    TensorAtPoint t = TensorAtPoint::zeros(0, 4, dim);
    t.comp = comp;
    return t;
}

double CurvatureSymmetryResiduals::max() const {
    return std::max(std::max(antisym_12, antisym_34), std::max(pair_exchange, first_bianchi));
}

CurvatureSymmetryResiduals curvature_symmetry_residuals(const CurvatureTensor& R) {
    CurvatureSymmetryResiduals r;
    const int d = R.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double v = R.at(i, j, k, l);
                    r.antisym_12 = std::max(r.antisym_12, std::abs(v + R.at(j, i, k, l)));
                    r.antisym_34 = std::max(r.antisym_34, std::abs(v + R.at(i, j, l, k)));
                    r.pair_exchange = std::max(r.pair_exchange, std::abs(v - R.at(k, l, i, j)));
                    double cyc = v + R.at(i, k, l, j) + R.at(i, l, j, k);
                    r.first_bianchi = std::max(r.first_bianchi, std::abs(cyc));
                }
    return r;
}

// ---------------------------------------------------------------------------
// SpaceFormParams and closed forms
// ---------------------------------------------------------------------------

double SpaceFormParams::eps_sum() const {
    double e = 0.0;
    for (int v : eps) e += static_cast<double>(v);
    return e;
}

double h_closed_form(const SpaceFormParams& p) {
    double e = p.eps_sum();
    return 0.5 * (static_cast<double>(p.n) * (p.c + 3.0 * e) + p.c - e);
}

double tau_closed_form(double h, int n, double eps_sum) {
    return 2.0 * static_cast<double>(n) * (h + eps_sum);
}

double c_from_h(double h, int n, double eps_sum) {
    return (2.0 * h + eps_sum - 3.0 * static_cast<double>(n) * eps_sum) /
           (static_cast<double>(n) + 1.0);
}

// ---------------------------------------------------------------------------
// build_space_form_curvature
// ---------------------------------------------------------------------------

CurvatureTensor build_space_form_curvature(const SpaceFormParams& p,
                                           const GffPointStructure& st,
                                           bool alternate_phi_coefficient) {
    if (p.n != st.n || p.s != st.s || p.eps != st.eps)
        throw StructureMismatch("space form: params and structure disagree on (n,s,eps)");
    const int d = st.dim();
    const double e = p.eps_sum();
    const double A = (p.c + 3.0 * e) / 4.0;
    const double B = alternate_phi_coefficient ? (p.c + e) / 4.0 : (p.c - e) / 4.0;

    auto G = st.g_phi_phi();                       // g(φe_i, φe_j)
    auto Phi = mat_mul(st.g.comp, st.phi.comp, d);  // Φ_ij = g(e_i, φe_j)
    auto eb = st.eta_bar_components();

    CurvatureTensor R;
    R.dim = d;
    R.metric = st.g;
    R.comp.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
    auto G_ = [&](int i, int j) { return G[static_cast<std::size_t>(i) * d + j]; };
    auto P_ = [&](int i, int j) { return Phi[static_cast<std::size_t>(i) * d + j]; };

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double v = A * (G_(i, k) * G_(j, l) - G_(j, k) * G_(i, l));
                    v += B * (P_(i, k) * P_(j, l) - P_(j, k) * P_(i, l) +
                              2.0 * P_(i, j) * P_(k, l));
                    v += eb[static_cast<std::size_t>(i)] * eb[static_cast<std::size_t>(k)] * G_(j, l) -
                         eb[static_cast<std::size_t>(j)] * eb[static_cast<std::size_t>(k)] * G_(i, l) +
                         eb[static_cast<std::size_t>(j)] * eb[static_cast<std::size_t>(l)] * G_(i, k) -
                         eb[static_cast<std::size_t>(i)] * eb[static_cast<std::size_t>(l)] * G_(j, k);
                    R.at(i, j, k, l) = v;
                }
    return R;
}

// ---------------------------------------------------------------------------
// sectional / φ-sectional curvature
// ---------------------------------------------------------------------------

double sectional_curvature(const CurvatureTensor& R, std::span<const double> x,
                           std::span<const double> y, double plane_tol) {
    const auto& g = R.metric;
    double gxx = g.inner(x, x), gyy = g.inner(y, y), gxy = g.inner(x, y);
    double delta = gxx * gyy - gxy * gxy;
    double scale = std::abs(gxx * gyy) + gxy * gxy;
    if (std::abs(delta) <= plane_tol * std::max(1.0, scale))
        throw DegeneratePlane("sectional curvature: plane is degenerate");
    return R.value(x, y, x, y) / delta;
}

double phi_sectional_curvature(const CurvatureTensor& R, const GffPointStructure& st,
                               std::span<const double> x, double tol) {
    if (st.dim() != R.dim) throw StructureMismatch("phi sectional: dim mismatch");
    auto proj = st.im_phi_projector();
    auto px = mat_vec(proj, x, st.dim());
    double scale = std::max(1.0, max_abs(x));
    double off = 0.0;
    for (int i = 0; i < st.dim(); ++i)
        off = std::max(off, std::abs(px[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
    if (off > tol * scale) throw NotInImagePhi("phi sectional: x is not in Im(φ)");

    double q = st.g.inner(x, x);
    if (std::abs(q) <= 1e-10 * scale * scale)
        throw LightlikeVector("phi sectional: x is lightlike");

    auto phix = st.phi_apply(x);
    return sectional_curvature(R, x, phix);
}

// ---------------------------------------------------------------------------
// Ricci and scalar curvature
// ---------------------------------------------------------------------------

TensorAtPoint ricci_from_curvature(const CurvatureTensor& R, const AdaptedFrame& frame) {
    const int d = R.dim;
    auto vecs = frame.all_vectors();
    auto signs = frame.all_signs();
    if (2 * frame.n() + frame.s() != d)
        throw FrameMismatch("ricci: frame size differs from tensor dimension");
    for (const auto& v : vecs)
        if (static_cast<int>(v.size()) != d) throw FrameMismatch("ricci: frame vector dim mismatch");

    TensorAtPoint ric = TensorAtPoint::zeros(0, 2, d);
    // M_ij += w · Σ_{b,d} R_{i b j d} F^b F^d
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        const auto& F = vecs[a];
        double w = static_cast<double>(signs[a]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int b = 0; b < d; ++b) {
                    double Fb = F[static_cast<std::size_t>(b)];
                    if (Fb == 0.0) continue;
                    for (int l = 0; l < d; ++l)
                        acc += Fb * F[static_cast<std::size_t>(l)] * R.at(i, b, j, l);
                }
                ric.comp[static_cast<std::size_t>(i) * d + j] += w * acc;
            }
    }
    return ric;
}

TensorAtPoint ricci_by_contraction(const CurvatureTensor& R) {
    auto ginv = metric_inverse(R.metric);
    const int d = R.dim;
    TensorAtPoint ric = TensorAtPoint::zeros(0, 2, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int b = 0; b < d; ++b)
                for (int l = 0; l < d; ++l)
                    acc += ginv[static_cast<std::size_t>(b) * d + l] * R.at(i, b, j, l);
            ric.comp[static_cast<std::size_t>(i) * d + j] = acc;
        }
    return ric;
}

double scalar_curvature(const TensorAtPoint& ric, const AdaptedFrame& frame,
                        const MetricAtPoint& g) {
    if (ric.dim != g.dim) throw FrameMismatch("scalar curvature: dim mismatch");
    auto vecs = frame.all_vectors();
    auto signs = frame.all_signs();
    double tau = 0.0;
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        const auto& F = vecs[a];
        double acc = 0.0;
        for (int i = 0; i < ric.dim; ++i)
            for (int j = 0; j < ric.dim; ++j)
                acc += F[static_cast<std::size_t>(i)] * F[static_cast<std::size_t>(j)] *
                       ric.comp[static_cast<std::size_t>(i) * ric.dim + j];
        tau += static_cast<double>(signs[a]) * acc;
    }
    return tau;
}

// ---------------------------------------------------------------------------
// Characteristic identities
// ---------------------------------------------------------------------------

ValidationReport check_characteristic_identities(const CurvatureTensor& R,
                                                 const GffPointStructure& st,
                                                 int samples, std::uint64_t seed) {
    if (st.dim() != R.dim) throw StructureMismatch("identities: dim mismatch");
    const int d = st.dim();
    SeededRng rng(seed);
    auto G = st.g_phi_phi();
    auto gpp = [&](std::span<const double> u, std::span<const double> v) {
        return form_value(G, u, v, d);
    };

    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0, r5 = 0.0;
    for (int it = 0; it < samples; ++it) {
        auto X = rng.vector(d);
        auto Y = rng.vector(d);
        auto Z = rng.vector(d);
        double ebX = st.eta_bar(X), ebY = st.eta_bar(Y);

        for (int a = 0; a < st.s; ++a) {
            const auto& xia = st.xi[static_cast<std::size_t>(a)];
            double ea = static_cast<double>(st.eps[static_cast<std::size_t>(a)]);
            r1 = std::max(r1, std::abs(R.value(X, Y, xia, Z) -
                                       ea * (ebX * gpp(Y, Z) - ebY * gpp(X, Z))));
            r4 = std::max(r4, std::abs(R.value(st.phi_apply(X), st.phi_apply(Y), xia, Z)));
            for (int b = 0; b < st.s; ++b) {
                const auto& xib = st.xi[static_cast<std::size_t>(b)];
                double eb = static_cast<double>(st.eps[static_cast<std::size_t>(b)]);
                r2 = std::max(r2, std::abs(R.value(xib, Y, xia, Z) - eb * ea * gpp(Y, Z)));
                for (int c = 0; c < st.s; ++c)
                    r3 = std::max(r3, std::abs(R.value(xib, st.xi[static_cast<std::size_t>(c)], xia, Z)));
            }
        }

        // U, V random in span(ξ)
        std::vector<double> U(static_cast<std::size_t>(d), 0.0), V(static_cast<std::size_t>(d), 0.0);
        for (int a = 0; a < st.s; ++a) {
            double cu = rng.range(-1.0, 1.0), cv = rng.range(-1.0, 1.0);
            for (int i = 0; i < d; ++i) {
                U[static_cast<std::size_t>(i)] += cu * st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
                V[static_cast<std::size_t>(i)] += cv * st.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
            }
        }
        r5 = std::max(r5, std::abs(R.value(U, Y, V, Z) - st.eta_bar(U) * st.eta_bar(V) * gpp(Y, Z)));
    }

    ValidationReport rep;
    rep.residuals = {{"xi_slot_identity", r1},
                     {"double_xi_identity", r2},
                     {"triple_xi_identity", r3},
                     {"phi_phi_xi_identity", r4},
                     {"span_xi_identity", r5}};
    return rep;
}

// ---------------------------------------------------------------------------
// η-Einstein fit
// ---------------------------------------------------------------------------

EtaEinsteinFit eta_einstein_fit(const TensorAtPoint& ric, const GffPointStructure& st) {
    const int d = st.dim();
    if (ric.dim != d || ric.contrav != 0 || ric.cov != 2)
        throw DimensionMismatch("eta einstein fit: Ric must be a (0,2) tensor of matching dim");

    auto G1 = st.g_phi_phi();
    auto eb = st.eta_bar_components();
    std::vector<double> G2(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            G2[static_cast<std::size_t>(i) * d + j] = eb[static_cast<std::size_t>(i)] * eb[static_cast<std::size_t>(j)];

    // normal equations over all basis pairs
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t m = 0; m < G1.size(); ++m) {
        a11 += G1[m] * G1[m];
        a12 += G1[m] * G2[m];
        a22 += G2[m] * G2[m];
        b1 += ric.comp[m] * G1[m];
        b2 += ric.comp[m] * G2[m];
    }
    double det = a11 * a22 - a12 * a12;
    double scale = std::max({a11, a22, 1e-300});
    if (std::abs(det) <= 1e-12 * scale * scale)
        throw SingularDesign("eta einstein fit: basis tensors are linearly dependent");

    EtaEinsteinFit fit;
    fit.h = (b1 * a22 - b2 * a12) / det;
    fit.k = (a11 * b2 - a12 * b1) / det;
    double r = 0.0;
    for (std::size_t m = 0; m < G1.size(); ++m)
        r = std::max(r, std::abs(ric.comp[m] - fit.h * G1[m] - fit.k * G2[m]));
    fit.residual = r;
    return fit;
}

}  // namespace gff
