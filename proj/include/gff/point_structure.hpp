#pragma once

#include <string>
#include <vector>

#include "gff/tensor.hpp"

namespace gff {

// ---------------------------------------------------------------------------
// Framed f-structure with compatible indefinite metric on one tangent space:
// (φ, ξ_α, η^α, g, ε_α) with dim = 2n+s, φ of rank 2n, ker(φ) spanned by the ξ's.
// ---------------------------------------------------------------------------

struct GffPointStructure {
    int n = 0;
    int s = 0;
    MetricAtPoint g;
    TensorAtPoint phi;                      // (1,1), phi.comp[k*dim+j] = φ^k_j
    std::vector<std::vector<double>> xi;    // s × dim
    std::vector<std::vector<double>> eta;   // s × dim, covector components
    std::vector<int> eps;                   // s characteristic signs ±1

    int dim() const { return 2 * n + s; }
    // φ applied to a vector
    std::vector<double> phi_apply(std::span<const double> x) const;
    // η̄ = Σ_α ε_α η^α evaluated on x
    double eta_bar(std::span<const double> x) const;
    std::vector<double> eta_bar_components() const;
    // ξ̄ = Σ_α ξ_α
    std::vector<double> xi_bar() const;
    // g(φ·,φ·) as a dim×dim array
    std::vector<double> g_phi_phi() const;
    // projector onto Im(φ), computed as -φ²
    std::vector<double> im_phi_projector() const;
};

struct NamedResidual {
    std::string name;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<NamedResidual> residuals;
    double max_residual() const;
    bool valid(double tol) const { return max_residual() < tol; }
};

// One residual per structure axiom; invalid structures report residuals
// rather than throwing. Throws DimensionMismatch only for inconsistent shapes.
ValidationReport validate_structure(const GffPointStructure& st);

// Block-diagonal model structure: basis (E_1..E_n, φE_1..φE_n, ξ_1..ξ_s),
// g = diag(σ_1..σ_n, σ_1..σ_n, ε_1..ε_s) with σ_i = +1 for i < p, else −1,
// so the signature of g on Im(φ) is (2p, 2q).
GffPointStructure canonical_point_structure(int n, int s, const std::vector<int>& eps,
                                            std::pair<int, int> phi_signature);
GffPointStructure canonical_point_structure(int n, int s, const std::vector<int>& eps);

// ---------------------------------------------------------------------------
// Orthonormal φ-adapted frame (E_i, φE_i, ξ_α)
// ---------------------------------------------------------------------------

struct AdaptedFrame {
    std::vector<std::vector<double>> E;     // n vectors
    std::vector<std::vector<double>> phiE;  // φE_i, exact images under φ
    std::vector<std::vector<double>> xi;    // s vectors
    std::vector<int> eps_i;                 // n signs g(E_i,E_i) = ±1
    std::vector<int> eps_alpha;             // s signs g(ξ_α,ξ_α)

    int n() const { return static_cast<int>(E.size()); }
    int s() const { return static_cast<int>(xi.size()); }
    // full frame in order (E_1..E_n, φE_1..φE_n, ξ_1..ξ_s) with matching signs
    std::vector<std::vector<double>> all_vectors() const;
    std::vector<int> all_signs() const;
};

// Seeds candidate vectors from a deterministic RNG, projects them into Im(φ)
// and g-orthogonalizes against the pairs already chosen.
AdaptedFrame build_adapted_frame(const GffPointStructure& st,
                                 std::uint64_t seed = kDefaultSeed);

// Φ(X,Y) = g(X, φY) as a (0,2) tensor
TensorAtPoint fundamental_form(const GffPointStructure& st);

// Transports a structure along an invertible map L: φ→LφL⁻¹, ξ→Lξ, η→η∘L⁻¹,
// g→g(L⁻¹·,L⁻¹·). Every axiom is preserved; used to generate generic test data.
GffPointStructure conjugate_structure(const GffPointStructure& st,
                                      std::span<const double> L);

}  // namespace gff
