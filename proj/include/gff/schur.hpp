#pragma once

#include "gff/chart.hpp"
#include "gff/tolerances.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// η-Einstein fit straight from chart data, generic over the scalar type so the
// fitted h field can be differentiated with nested duals.
// ---------------------------------------------------------------------------

template <class S>
struct FitHK {
    S h{}, k{};
};

template <class S>
FitHK<S> eta_einstein_fit_generic(const ChartStructure& cs, const std::vector<S>& p) {
    const int d = cs.dim();
    auto ric = ricci_generic(cs.metric_chart(), p);
    auto g = cs.metric_chart().metric(p);
    auto phi = cs.phi_matrix(p);

    // G1 = φᵀ g φ, G2 = η̄ ⊗ η̄
    std::vector<S> gphi(static_cast<std::size_t>(d) * d, S(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            S acc = S(0.0);
            for (int k = 0; k < d; ++k)
                acc = acc + g[static_cast<std::size_t>(i) * d + k] * phi[static_cast<std::size_t>(k) * d + j];
            gphi[static_cast<std::size_t>(i) * d + j] = acc;
        }
    std::vector<S> G1(static_cast<std::size_t>(d) * d, S(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            S acc = S(0.0);
            for (int k = 0; k < d; ++k)
                acc = acc + phi[static_cast<std::size_t>(k) * d + i] * gphi[static_cast<std::size_t>(k) * d + j];
            G1[static_cast<std::size_t>(i) * d + j] = acc;
        }
    std::vector<S> eb(static_cast<std::size_t>(d), S(0.0));
    for (int a = 0; a < cs.s(); ++a)
        for (int k = 0; k < d; ++k)
            eb[static_cast<std::size_t>(k)] =
                eb[static_cast<std::size_t>(k)] +
                static_cast<double>(cs.eps()[static_cast<std::size_t>(a)]) * cs.eta_field(a, k).eval(p);

    S a11(0.0), a12(0.0), a22(0.0), b1(0.0), b2(0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            S g1 = G1[static_cast<std::size_t>(i) * d + j];
            S g2 = eb[static_cast<std::size_t>(i)] * eb[static_cast<std::size_t>(j)];
            S rc = ric[static_cast<std::size_t>(i) * d + j];
            a11 = a11 + g1 * g1;
            a12 = a12 + g1 * g2;
            a22 = a22 + g2 * g2;
            b1 = b1 + rc * g1;
            b2 = b2 + rc * g2;
        }
    S det = a11 * a22 - a12 * a12;
    if (std::abs(val(det)) < 1e-14)
        throw SingularDesign("chart fit: design matrix is singular");
    FitHK<S> out;
    out.h = (b1 * a22 - b2 * a12) / det;
    out.k = (a11 * b2 - a12 * b1) / det;
    return out;
}

// ---------------------------------------------------------------------------
// Scan over sampled points
// ---------------------------------------------------------------------------

struct ScanReport {
    std::vector<std::vector<double>> points;
    std::vector<double> h_values;
    std::vector<double> k_values;
    std::vector<double> c_values;
    std::vector<double> fit_residuals;
    std::vector<double> c_pointwise_spreads;  // φ-plane spread at each point
    double spread_h = 0.0;
    double spread_c = 0.0;
    double bianchi_residual = 0.0;  // max over points
    double xi_h_max = 0.0;          // max |ξ_β(h)| over points and β
};

struct ScanOptions {
    int npoints = 10;
    std::uint64_t seed = kDefaultSeed;
    Tolerances tol;
    bool with_bianchi = true;
    int phi_planes = 16;  // random φ-planes per point for c extraction
};

// Certifies the S gates at each sampled point first; throws GateFailure when a
// gate exceeds the chart gate tolerance.
ScanReport scan_eta_einstein(const ChartStructure& cs, const ScanOptions& opts = {});

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class VerdictStatus { Pass, Fail, NotApplicable };

struct Verdict {
    VerdictStatus status = VerdictStatus::Fail;
    std::string message;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed() const { return status == VerdictStatus::Pass; }
};

// constancy of the fitted h across the chart box; not applicable for n = 1
Verdict schur_h_constancy(const ScanReport& report, int n, const Tolerances& tol = {});

// space form ⇒ η-Einstein with (h, k) = (closed form, 2n)
struct SpaceFormVerdict {
    bool passed = false;
    EtaEinsteinFit fit;
    double h_expected = 0.0;
    double symmetry_residual = 0.0;
    double identity_residual = 0.0;   // worst characteristic identity
    double phi_sectional_dev = 0.0;   // max |k(x,φx) − c| over random φ-planes
    double tau_residual = 0.0;        // |τ − 2n(h+ε)|
    std::string message;
};

SpaceFormVerdict verify_spaceform_implies_eta_einstein(const SpaceFormParams& params,
                                                       const Tolerances& tol = {},
                                                       std::pair<int, int> phi_signature = {-1, -1},
                                                       bool alternate_phi_coefficient = false,
                                                       std::uint64_t seed = kDefaultSeed);

// constancy of c across the chart box; "not pointwise constant" when the
// per-point φ-plane spread already fails
Verdict verify_c_constancy(const ChartStructure& cs, const ScanOptions& opts = {});

// max over m of |2n ∂_m h − 2 (div Ric)_m|, assembled from third-order duals
double contracted_bianchi_residual(const ChartStructure& cs, std::span<const double> p,
                                   const Tolerances& tol = {});

// spread of k(x,φx) over random φ-planes of one curvature tensor
double phi_plane_spread(const CurvatureTensor& R, const GffPointStructure& st, int nplanes,
                        std::uint64_t seed = kDefaultSeed, double* c_out = nullptr);

// max |ξ_β(h)| at a point via the AD derivative of the fitted h field
double xi_derivative_of_h(const ChartStructure& cs, std::span<const double> p);

}  // namespace gff
