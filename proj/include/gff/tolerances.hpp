#pragma once

namespace gff {

// Two base knobs; every named check derives its threshold from one of them.
// Algebraic checks are model-level identities; differential checks go through
// the chart derivative pipeline, where third-order chains cost conditioning.
struct Tolerances {
    double alg = 1e-10;
    double diff = 1e-6;

    double fit_param() const { return 10.0 * alg; }      // fitted h, k vs closed forms
    double chart_gate() const { return 0.1 * diff; }     // field-level S gates
    double chart_validate() const { return 0.01 * diff; }  // frozen structure axioms
    double spread() const { return 10.0 * diff; }        // scan spreads, Bianchi, ξ(h)
};

}  // namespace gff
