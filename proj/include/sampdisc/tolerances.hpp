#pragma once

namespace sampdisc {

// Global comparison tolerances. Absolute for O(1) quantities, relative
// otherwise; mutable so experiment drivers can tighten or relax them.
struct Tolerances {
    double abs_eq = 1e-10;
    double rel_eq = 1e-9;
    double real_symmetry = 1e-12;
    double rank_rel = 1e-12;  // rank cutoff relative to largest singular value
};

Tolerances& tolerances();

}  // namespace sampdisc
