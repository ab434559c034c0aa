#pragma once

#include <cstdint>
#include <vector>

#include "sampdisc/cubature.hpp"
#include "sampdisc/discretization.hpp"
#include "sampdisc/fourier.hpp"

namespace sampdisc {

// A real unit-norm class member vanishing on a node set, with maximal mean
// value among all such members of the box-restricted class. Drives the
// duality-based lower bounds; third parties can re-verify from the reported
// residuals and box.
struct FoolingCertificate {
    TrigPolynomial f = TrigPolynomial(1);
    std::vector<std::vector<double>> points;
    double integral = 0.0;        // I(f) = f̂(0), sign-normalized >= 0
    double residual_max = 0.0;    // max_j |f(xi^j)|
    double class_norm_value = 0.0;
    FrequencyBox box = FrequencyBox::tensor(1, 0);
    int constraint_rank = 0;
    int free_parameters = 0;
};

// Maximizes f̂(0) over real f with class_norm <= 1 and f(xi^j) = 0 on the
// truncated box: in profile coordinates the feasible set is the unit ball
// cut by a linear subspace, so the optimum is the normalized projection of
// the mean-value functional onto the constraint nullspace (rank-revealing
// orthogonal factorization; redundant nodes are fine). SobolevMixed only.
// Throws when the nullspace is trivial (box too small for the node count).
FoolingCertificate fooling_function(const std::vector<std::vector<double>>& points,
                                    const ClassSpec& spec, const FrequencyBox& box);
FoolingCertificate fooling_function(const CubatureRule& rule, const ClassSpec& spec,
                                    const FrequencyBox& box);

// The fooling integral, or 0 when only the zero function is feasible: a
// certified lower bound on the box-restricted integration error of any
// weights on these nodes.
double kappa_lower(const std::vector<std::vector<double>>& points, const ClassSpec& spec,
                   const FrequencyBox& box);
double kappa_lower(const CubatureRule& rule, const ClassSpec& spec, const FrequencyBox& box);

// The shifted pair (f+1)/2, (f-1)/2 and its exact defect identity
//   defect_plus - defect_minus = I(f) - Lambda(f)
// which pigeonholes into a certified per-rule discretization lower bound.
struct WitnessPair {
    TrigPolynomial f_plus = TrigPolynomial(1);
    TrigPolynomial f_minus = TrigPolynomial(1);
    double defect_plus = 0.0;    // signed L_2 defects
    double defect_minus = 0.0;
    double integration_gap = 0.0;   // I(f) - Lambda(f)
    double certified_er_lower = 0.0;  // |gap| / 2
    double class_norm_plus = 0.0;    // filled when a spec is supplied
    double class_norm_minus = 0.0;
};

// f must be real and the rule weights must sum to 1 (the identity needs
// both). When spec is given the pair's class norms are recorded.
WitnessPair shifted_pair(const TrigPolynomial& f, const CubatureRule& rule,
                         const ClassSpec* spec = nullptr);

// One stage of the power chain: members c_k (f^{2^k} +- 1), their class
// norms, their signed L_2 defects, and the exact pair identity
//   defect2_plus - defect2_minus = 4 c_k^2 (I - Lambda)(f^{2^k}).
struct PowerChainStage {
    int k = 0;
    double c_k = 0.0;
    TrigPolynomial member_plus = TrigPolynomial(1);
    TrigPolynomial member_minus = TrigPolynomial(1);
    double class_norm_plus = 0.0;
    double class_norm_minus = 0.0;
    double defect2_plus = 0.0;
    double defect2_minus = 0.0;
    double defect_q_plus = 0.0;    // signed defects at q = 2^{k+1}
    double defect_q_minus = 0.0;
    double power_gap = 0.0;        // (I - Lambda)(f^{2^k})
    double identity_residual = 0.0;
};

struct PowerChainResult {
    int s = 1;
    int q = 2;                       // 2^s
    double a = 1.0;
    double c_product = 0.0;          // c_0 ... c_{s-1}
    double integration_gap = 0.0;    // I(f) - Lambda(f)
    double certified_lq_lower = 0.0; // c_product * |gap|
    std::vector<PowerChainStage> stages;
};

// Chain realizing the powered-shift property for q = 2^s: c_k chosen as
// 1/(1 + a^{2^k - 1}) so that every member stays in the unit ball under the
// quasi-algebra bound (membership is verified and a failure aborts with
// diagnostics). The certified value follows the c(s) = c_0...c_{s-1}
// constant pattern; the s = 1 case is exactly shifted_pair.
PowerChainResult power_reduction_witness(const TrigPolynomial& f, const CubatureRule& rule,
                                         int s, double a, const ClassSpec* spec = nullptr);

}  // namespace sampdisc
