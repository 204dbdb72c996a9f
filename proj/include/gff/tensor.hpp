#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gff/linalg.hpp"

namespace gff {

// Default relative threshold separating genuine null directions from roundoff.
inline constexpr double kDegeneracyTol = 1e-9;

// ---------------------------------------------------------------------------
// Metric on one tangent space
// ---------------------------------------------------------------------------

struct MetricAtPoint {
    int dim = 0;
    std::vector<double> comp;       // dim×dim, row-major, symmetric
    std::pair<int, int> signature;  // (#plus, #minus)

    // Validates symmetry and nondegeneracy, computes the signature.
    static MetricAtPoint from_components(int dim, std::vector<double> comp,
                                         double degeneracy_tol = kDegeneracyTol);
    static MetricAtPoint diagonal(std::vector<double> diag);

    double operator()(int i, int j) const { return comp[static_cast<std::size_t>(i) * dim + j]; }
    double inner(std::span<const double> x, std::span<const double> y) const;
};

std::vector<double> metric_inverse(const MetricAtPoint& g,
                                   double degeneracy_tol = kDegeneracyTol);

// ---------------------------------------------------------------------------
// Dense tensor on one tangent space; contravariant slots first
// ---------------------------------------------------------------------------

struct TensorAtPoint {
    int contrav = 0;
    int cov = 0;
    int dim = 0;
    std::vector<double> comp;  // row-major over (contrav..., cov...) indices

    static TensorAtPoint zeros(int contrav, int cov, int dim);
    int rank() const { return contrav + cov; }
    std::size_t size() const { return comp.size(); }

    double at(std::span<const int> idx) const { return comp[offset(idx)]; }
    double& at(std::span<const int> idx) { return comp[offset(idx)]; }
    std::size_t offset(std::span<const int> idx) const;
};

// Lowering acts on the last contravariant slot, raising on the first covariant
// slot, so the physical index order of the component array never changes.
// `slot` is the absolute slot index (contravariant slots first).
TensorAtPoint lower_index(const TensorAtPoint& t, int slot, const MetricAtPoint& g);
TensorAtPoint raise_index(const TensorAtPoint& t, int slot, const MetricAtPoint& g);

// Metric-weighted trace over a slot pair: δ for a mixed pair, g^{ab} for two
// covariant slots, g_{ab} for two contravariant slots.
TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b,
                       const MetricAtPoint& g);

// ---------------------------------------------------------------------------
// Signed orthonormalization for indefinite inner products
// ---------------------------------------------------------------------------

struct OrthonormalFrame {
    std::vector<std::vector<double>> vectors;
    std::vector<int> signs;  // ±1, g(v_i,v_i) after normalization
};

// Greedy pivoted Gram-Schmidt: each step takes the remaining vector (or sum of
// two remaining vectors) whose projection complement has the largest |g-norm|.
// Throws DegenerateSpan when every pivot candidate is g-null.
OrthonormalFrame orthonormalize_indefinite(const std::vector<std::vector<double>>& vectors,
                                           const MetricAtPoint& g,
                                           double degeneracy_tol = kDegeneracyTol);

}  // namespace gff
