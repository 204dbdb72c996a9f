#include "gff/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace gff {

// ---------------------------------------------------------------------------
// MetricAtPoint
// ---------------------------------------------------------------------------

MetricAtPoint MetricAtPoint::from_components(int dim, std::vector<double> comp,
                                             double degeneracy_tol) {
    if (dim <= 0 || static_cast<int>(comp.size()) != dim * dim)
        throw DimensionMismatch("metric: component array is not dim×dim");
    double scale = max_abs(comp);
    if (scale == 0.0) throw DegenerateMetric("metric: zero components");
    if (symmetry_residual(comp, dim) > 1e-12 * scale)
        throw DimensionMismatch("metric: components not symmetric");

    auto sv = singular_values(comp, dim);
    if (sv.back() <= degeneracy_tol * sv.front())
        throw DegenerateMetric("metric: smallest singular value below tolerance");

    MetricAtPoint g;
    g.dim = dim;
    g.comp = std::move(comp);
    g.signature = symmetric_signature(g.comp, dim, degeneracy_tol);
    return g;
}

MetricAtPoint MetricAtPoint::diagonal(std::vector<double> diag) {
    int dim = static_cast<int>(diag.size());
    std::vector<double> comp(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) comp[static_cast<std::size_t>(i) * dim + i] = diag[static_cast<std::size_t>(i)];
    return from_components(dim, std::move(comp));
}

double MetricAtPoint::inner(std::span<const double> x, std::span<const double> y) const {
    return form_value(comp, x, y, dim);
}

std::vector<double> metric_inverse(const MetricAtPoint& g, double degeneracy_tol) {
    auto sv = singular_values(g.comp, g.dim);
    if (sv.back() <= degeneracy_tol * sv.front())
        throw DegenerateMetric("metric_inverse: smallest singular value below tolerance");
    return gauss_jordan_inverse(g.comp, g.dim);
}

// ---------------------------------------------------------------------------
// TensorAtPoint
// ---------------------------------------------------------------------------

TensorAtPoint TensorAtPoint::zeros(int contrav, int cov, int dim) {
    TensorAtPoint t;
    t.contrav = contrav;
    t.cov = cov;
    t.dim = dim;
    std::size_t sz = 1;
    for (int r = 0; r < contrav + cov; ++r) sz *= static_cast<std::size_t>(dim);
    t.comp.assign(sz, 0.0);
    return t;
}

std::size_t TensorAtPoint::offset(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int r = 0; r < rank(); ++r) off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
    return off;
}

namespace {

// odometer over `rank` indices in [0,dim)
bool advance(std::vector<int>& idx, int dim) {
    for (int r = static_cast<int>(idx.size()) - 1; r >= 0; --r) {
        if (++idx[static_cast<std::size_t>(r)] < dim) return true;
        idx[static_cast<std::size_t>(r)] = 0;
    }
    return false;
}

TensorAtPoint convert_slot(const TensorAtPoint& t, int slot, const MetricAtPoint& g,
                           bool lowering) {
    if (t.dim != g.dim) throw DimensionMismatch("index shift: tensor/metric dim mismatch");
    if (lowering) {
        if (t.contrav == 0 || slot != t.contrav - 1)
            throw SlotOutOfRange("lower_index: slot must be the last contravariant slot");
    } else {
        if (t.cov == 0 || slot != t.contrav)
            throw SlotOutOfRange("raise_index: slot must be the first covariant slot");
    }
    std::vector<double> w = lowering ? g.comp : metric_inverse(g);

    TensorAtPoint out = t;
    out.contrav += lowering ? -1 : 1;
    out.cov += lowering ? 1 : -1;
    std::fill(out.comp.begin(), out.comp.end(), 0.0);

    const int rank = t.rank();
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    std::vector<int> src(static_cast<std::size_t>(rank), 0);
    do {
        double acc = 0.0;
        src = idx;
        for (int b = 0; b < t.dim; ++b) {
            src[static_cast<std::size_t>(slot)] = b;
            acc += w[static_cast<std::size_t>(idx[static_cast<std::size_t>(slot)]) * t.dim + b] * t.comp[t.offset(src)];
        }
        out.comp[out.offset(idx)] = acc;
    } while (advance(idx, t.dim));
    return out;
}

}  // namespace

TensorAtPoint lower_index(const TensorAtPoint& t, int slot, const MetricAtPoint& g) {
    return convert_slot(t, slot, g, true);
}

TensorAtPoint raise_index(const TensorAtPoint& t, int slot, const MetricAtPoint& g) {
    return convert_slot(t, slot, g, false);
}

TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b,
                       const MetricAtPoint& g) {
    const int rank = t.rank();
    if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= rank || slot_b >= rank)
        throw SlotOutOfRange("contract: slots must be distinct and in range");
    if (t.dim != g.dim) throw DimensionMismatch("contract: tensor/metric dim mismatch");
    int sa = std::min(slot_a, slot_b), sb = std::max(slot_a, slot_b);

    bool a_up = sa < t.contrav, b_up = sb < t.contrav;
    std::vector<double> w;
    if (a_up && b_up) w = g.comp;                       // g_{ab}
    else if (!a_up && !b_up) w = metric_inverse(g);     // g^{ab}
    // mixed pair: plain δ trace, w stays empty

    TensorAtPoint out = TensorAtPoint::zeros(t.contrav - (a_up ? 1 : 0) - (b_up ? 1 : 0),
                                             t.cov - (a_up ? 0 : 1) - (b_up ? 0 : 1), t.dim);

    std::vector<int> oidx(static_cast<std::size_t>(rank - 2), 0);
    std::vector<int> sidx(static_cast<std::size_t>(rank), 0);
    bool more = true;
    if (rank == 2) more = true;  // single scalar output, loop body runs once
    do {
        // scatter surviving indices around the contracted pair
        int pos = 0;
        for (int r = 0; r < rank; ++r) {
            if (r == sa || r == sb) continue;
            sidx[static_cast<std::size_t>(r)] = oidx[static_cast<std::size_t>(pos++)];
        }
        double acc = 0.0;
        for (int a = 0; a < t.dim; ++a) {
            sidx[static_cast<std::size_t>(sa)] = a;
            if (w.empty()) {
                sidx[static_cast<std::size_t>(sb)] = a;
                acc += t.comp[t.offset(sidx)];
            } else {
                for (int b = 0; b < t.dim; ++b) {
                    double wab = w[static_cast<std::size_t>(a) * t.dim + b];
                    if (wab == 0.0) continue;
                    sidx[static_cast<std::size_t>(sb)] = b;
                    acc += wab * t.comp[t.offset(sidx)];
                }
            }
        }
        out.comp[out.offset(oidx)] = acc;
        more = advance(oidx, t.dim);
    } while (more && rank > 2);
    return out;
}

// ---------------------------------------------------------------------------
// Indefinite orthonormalization
// ---------------------------------------------------------------------------

namespace {

std::vector<double> project_out(const std::vector<double>& v, const OrthonormalFrame& frame,
                                const MetricAtPoint& g) {
    std::vector<double> u = v;
    for (std::size_t k = 0; k < frame.vectors.size(); ++k) {
        double c = static_cast<double>(frame.signs[k]) * g.inner(u, frame.vectors[k]);
        for (int i = 0; i < g.dim; ++i) u[static_cast<std::size_t>(i)] -= c * frame.vectors[k][static_cast<std::size_t>(i)];
    }
    return u;
}

}  // namespace

OrthonormalFrame orthonormalize_indefinite(const std::vector<std::vector<double>>& vectors,
                                           const MetricAtPoint& g, double degeneracy_tol) {
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != g.dim)
            throw DimensionMismatch("orthonormalize: vector dim mismatch");

    double scale = 0.0;
    for (const auto& v : vectors) scale = std::max(scale, max_abs(v));
    scale = scale * scale * std::max(1.0, max_abs(g.comp));
    if (scale == 0.0) throw DegenerateSpan("orthonormalize: zero input");

    OrthonormalFrame frame;
    std::vector<std::vector<double>> remaining = vectors;

    while (!remaining.empty()) {
        // candidates: every remaining vector and every pairwise sum
        double best_norm = 0.0;
        std::vector<double> best_u;
        int best_i = -1;
        const int m = static_cast<int>(remaining.size());
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                std::vector<double> cand = remaining[static_cast<std::size_t>(i)];
                if (j != i)
                    for (int k = 0; k < g.dim; ++k) cand[static_cast<std::size_t>(k)] += remaining[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                auto u = project_out(cand, frame, g);
                double q = std::abs(g.inner(u, u));
                if (q > best_norm) {
                    best_norm = q;
                    best_u = std::move(u);
                    best_i = i;
                }
            }
        }
        if (best_i < 0 || best_norm <= degeneracy_tol * scale)
            throw DegenerateSpan("orthonormalize: span is g-degenerate");

        double q = g.inner(best_u, best_u);
        double inv = 1.0 / std::sqrt(std::abs(q));
        for (auto& c : best_u) c *= inv;
        frame.vectors.push_back(std::move(best_u));
        frame.signs.push_back(q > 0.0 ? 1 : -1);
        // consuming remaining[best_i] preserves the span: when the pivot was a
        // pair sum v_i+v_j, v_i is recoverable from the new frame vector and v_j
        remaining.erase(remaining.begin() + best_i);
    }
    return frame;
}

}  // namespace gff
