#pragma once

#include "gff/point_structure.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// Curvature data. Slot order convention throughout:
//   R(X,Y,Z,W) = g(R(Z,W)Y, X),  R(Z,W) = [∇_Z,∇_W] − ∇_[Z,W],
// and sectional curvature k(x,y) = R(x,y,x,y) / (g(x,x)g(y,y) − g(x,y)²).
// ---------------------------------------------------------------------------

struct CurvatureTensor {
    int dim = 0;
    std::vector<double> comp;  // (0,4) dense, row-major
    MetricAtPoint metric;

    double at(int i, int j, int k, int l) const {
        return comp[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
    }
    double& at(int i, int j, int k, int l) {
        return comp[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
    }
    // R(x,y,z,w) by full contraction
    double value(std::span<const double> x, std::span<const double> y,
                 std::span<const double> z, std::span<const double> w) const;
    TensorAtPoint as_tensor() const;
};

struct CurvatureSymmetryResiduals {
    double antisym_12 = 0.0;
    double antisym_34 = 0.0;
    double pair_exchange = 0.0;
    double first_bianchi = 0.0;  // cyclic over the last three slots
    double max() const;
};

CurvatureSymmetryResiduals curvature_symmetry_residuals(const CurvatureTensor& R);

// ---------------------------------------------------------------------------
// Space-form model parameters
// ---------------------------------------------------------------------------

struct SpaceFormParams {
    int n = 0;
    int s = 0;
    std::vector<int> eps;
    double c = 0.0;  // φ-sectional curvature value

    double eps_sum() const;  // ε = Σ_α ε_α
};

// h and τ closed forms for the η-Einstein constants of a space form
double h_closed_form(const SpaceFormParams& p);
double tau_closed_form(double h, int n, double eps_sum);
// inverse of h_closed_form in c
double c_from_h(double h, int n, double eps_sum);

// Pointwise curvature tensor of a space form with φ-sectional curvature c.
// The Φ-term coefficient is (c−ε)/4; `alternate_phi_coefficient` switches to
// the (c+ε)/4 variant kept as a regression guard (it shifts φ-sectional
// curvature to c + 1.5ε).
CurvatureTensor build_space_form_curvature(const SpaceFormParams& p,
                                           const GffPointStructure& st,
                                           bool alternate_phi_coefficient = false);

// ---------------------------------------------------------------------------
// Curvature-derived quantities
// ---------------------------------------------------------------------------

double sectional_curvature(const CurvatureTensor& R, std::span<const double> x,
                           std::span<const double> y, double plane_tol = 1e-10);

double phi_sectional_curvature(const CurvatureTensor& R, const GffPointStructure& st,
                               std::span<const double> x, double tol = 1e-8);

// Ric(X,Y) = Σ_i ε_i {R(X,E_i,Y,E_i) + R(X,φE_i,Y,φE_i)} + Σ_β ε_β R(X,ξ_β,Y,ξ_β)
TensorAtPoint ricci_from_curvature(const CurvatureTensor& R, const AdaptedFrame& frame);

// independent route: Ric_ij = Σ g^{bd} R_{ibjd}
TensorAtPoint ricci_by_contraction(const CurvatureTensor& R);

// full ε-weighted trace of Ric over the frame
double scalar_curvature(const TensorAtPoint& ric, const AdaptedFrame& frame,
                        const MetricAtPoint& g);

// ---------------------------------------------------------------------------
// Characteristic curvature identities (max residual per identity over a
// seeded randomized spanning set):
//   1. R(X,Y,ξ_α,Z) = ε_α{η̄(X)g(φY,φZ) − η̄(Y)g(φX,φZ)}
//   2. R(ξ_β,Y,ξ_α,Z) = ε_β ε_α g(φY,φZ)
//   3. R(ξ_β,ξ_γ,ξ_α,Z) = 0
//   4. R(φX,φY,ξ_α,Z) = 0
//   5. R(U,Y,V,Z) = η̄(U)η̄(V)g(φY,φZ) for U,V ∈ span(ξ)
// ---------------------------------------------------------------------------

ValidationReport check_characteristic_identities(const CurvatureTensor& R,
                                                 const GffPointStructure& st,
                                                 int samples = 64,
                                                 std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// η-Einstein least-squares fit: Ric ≈ h·g(φ·,φ·) + k·η̄⊗η̄ over all basis pairs
// ---------------------------------------------------------------------------

struct EtaEinsteinFit {
    double h = 0.0;
    double k = 0.0;
    double residual = 0.0;  // max-norm misfit
};

EtaEinsteinFit eta_einstein_fit(const TensorAtPoint& ric, const GffPointStructure& st);

}  // namespace gff
