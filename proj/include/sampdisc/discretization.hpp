#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sampdisc/cubature.hpp"
#include "sampdisc/fourier.hpp"

namespace sampdisc {

// One tested (function, rule, q) outcome. The signed defect is the
// primitive; the absolute value is the discretization error.
struct DefectRecord {
    std::string f_id;
    std::string rule_id;
    std::string class_id;
    int q = 2;
    std::int64_t m = 0;
    double signed_defect = 0.0;
    double er_abs() const { return signed_defect < 0 ? -signed_defect : signed_defect; }
};

void write_defect_csv(std::ostream& out, std::span<const DefectRecord> records);

// ||f||_q^q - sum_j lambda_j |f(xi^j)|^q, both terms exact for band-limited
// f (norm by convolution powers, samples by direct evaluation). Even q only.
double signed_defect(const TrigPolynomial& f, const CubatureRule& rule, int q);

double er_abs(const TrigPolynomial& f, const CubatureRule& rule, int q);

// a^{q-1} * kappa.hi: the quasi-algebra chain constant applied to the
// worst-case integration error. Requires spec.quasi_algebra_constant.
struct DiscretizationBound {
    double value = 0.0;
    double a = 1.0;
    ErrorInterval kappa;
    int q = 2;
};

DiscretizationBound discretization_bound(const CubatureRule& rule, const ClassSpec& spec, int q,
                                         WceOptions opts = {});
// same constant assembly with a caller-supplied kappa interval (e.g. a
// box-restricted quality value)
DiscretizationBound discretization_bound_with_kappa(const ClassSpec& spec, int q,
                                                    ErrorInterval kappa);

// Two-coefficient extremal witness: unit-norm f supported on {0, k*} where
// k* maximizes the kernel over the nonzero dual points in the search box.
// Its defect is achieved, so the value certifies a per-rule lower bound.
struct TwoTermWitness {
    TrigPolynomial f = TrigPolynomial(1);
    MultiIndex k_star;
    double achieved_er = 0.0;
};

TwoTermWitness two_term_witness(const CubatureRule& rule, const ClassSpec& spec, int q = 2,
                                std::int64_t search_box_limit = 64);

struct EmpiricalSupOptions {
    bool real_valued = false;
    bool include_witness = true;          // only applies to rank-1 rules
    std::int64_t witness_box_limit = 64;
};

// max of er_abs over seeded unit-ball draws (sample i uses seed derived from
// (seed, i), so enlarging n_samples keeps earlier draws), plus the two-term
// witness for lattice rules. A lower bound on the class supremum.
double empirical_sup_er(const CubatureRule& rule, const ClassSpec& spec, int q,
                        const FrequencyBox& sample_box, int n_samples, std::uint64_t seed,
                        EmpiricalSupOptions opts = {});

}  // namespace sampdisc
