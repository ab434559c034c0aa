#include "sampdisc/lower_bounds.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sampdisc {

namespace {

// Real parameterization of the box-restricted class in profile coordinates:
// theta_0 for the mean, then (a, b) per {k, -k} pair with
//   f̂(k) = F̂(k) (a + i b)/sqrt(2),  f̂(-k) = conj(f̂(k)),
// so that class_norm(f)^2 is the Euclidean norm of theta.
struct RealBasis {
    std::vector<MultiIndex> pair_reps;  // positive representatives
    int params() const { return 1 + 2 * static_cast<int>(pair_reps.size()); }
};

RealBasis real_basis(const FrequencyBox& box) {
    RealBasis basis;
    box.for_each([&](const MultiIndex& k) {
        if (k.is_positive_representative()) basis.pair_reps.push_back(k);
    });
    return basis;
}

TrigPolynomial poly_from_theta(const RealBasis& basis, const ClassSpec& spec,
                               const Eigen::VectorXd& theta) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    TrigPolynomial f(spec.d);
    f.set_coeff(MultiIndex::zeros(spec.d), Complex{theta[0], 0.0});
    for (std::size_t p = 0; p < basis.pair_reps.size(); ++p) {
        const MultiIndex& k = basis.pair_reps[p];
        const double fk = kernel_coefficient(spec, k);
        const Complex v{theta[1 + 2 * static_cast<Eigen::Index>(p)] * inv_sqrt2,
                        theta[2 + 2 * static_cast<Eigen::Index>(p)] * inv_sqrt2};
        f.set_coeff(k, fk * v);
        f.set_coeff(-k, fk * std::conj(v));
    }
    return f;
}

// constraint row: f(x) = theta_0 + sum_p sqrt(2) F̂(k_p) [a_p cos(k_p x) - b_p sin(k_p x)]
Eigen::MatrixXd constraint_matrix(const RealBasis& basis, const ClassSpec& spec,
                                  const std::vector<std::vector<double>>& points) {
    const double sqrt2 = std::sqrt(2.0);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(points.size()),
                      static_cast<Eigen::Index>(basis.params()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        const auto& x = points[j];
        if (static_cast<int>(x.size()) != spec.d)
            throw std::invalid_argument("fooling_function: point dimension mismatch");
        A(static_cast<Eigen::Index>(j), 0) = 1.0;
        for (std::size_t p = 0; p < basis.pair_reps.size(); ++p) {
            const MultiIndex& k = basis.pair_reps[p];
            double phase = 0.0;
            for (int t = 0; t < spec.d; ++t)
                phase += static_cast<double>(k[t]) * x[static_cast<std::size_t>(t)];
            const double fk = kernel_coefficient(spec, k);
            A(static_cast<Eigen::Index>(j), 1 + 2 * static_cast<Eigen::Index>(p)) =
                sqrt2 * fk * std::cos(phase);
            A(static_cast<Eigen::Index>(j), 2 + 2 * static_cast<Eigen::Index>(p)) =
                -sqrt2 * fk * std::sin(phase);
        }
    }
    return A;
}

struct FoolingSolve {
    bool feasible = false;    // nontrivial nullspace with positive objective
    Eigen::VectorXd theta;    // unit vector when feasible
    double integral = 0.0;
    int rank = 0;
    int params = 0;
};

FoolingSolve fooling_solve(const std::vector<std::vector<double>>& points, const ClassSpec& spec,
                           const FrequencyBox& box, RealBasis& basis_out) {
    if (spec.kind != ClassSpec::Kind::SobolevMixed)
        throw std::invalid_argument("fooling_function: SobolevMixed classes only");
    if (box.dim() != spec.d) throw std::invalid_argument("fooling_function: box dimension mismatch");

    basis_out = real_basis(box);
    const int N = basis_out.params();

    FoolingSolve solve;
    solve.params = N;
    if (points.empty()) {
        // unconstrained: the unit-ball maximizer of the mean is the constant 1
        solve.feasible = true;
        solve.theta = Eigen::VectorXd::Zero(N);
        solve.theta[0] = 1.0;
        solve.integral = 1.0;
        solve.rank = 0;
        return solve;
    }

    const Eigen::MatrixXd A = constraint_matrix(basis_out, spec, points);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    svd.setThreshold(tolerances().rank_rel);  // cutoff relative to sigma_max
    const auto rank = static_cast<int>(svd.rank());
    solve.rank = rank;
    if (rank >= N) return solve;  // trivial nullspace: only f = 0 vanishes on the nodes

    // theta maximizing theta_0 over ball x nullspace: normalized projection
    // of e_0 onto the nullspace, objective value = its norm
    const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(N - rank);
    const Eigen::VectorXd w = null_basis.transpose() * Eigen::VectorXd::Unit(N, 0);
    const double norm = w.norm();
    if (norm <= 1e-14) {
        // the mean functional is orthogonal to the feasible subspace: the
        // box-restricted sup is 0
        solve.feasible = false;
        return solve;
    }
    solve.feasible = true;
    solve.theta = null_basis * (w / norm);
    solve.integral = norm;
    return solve;
}

}  // namespace

FoolingCertificate fooling_function(const std::vector<std::vector<double>>& points,
                                    const ClassSpec& spec, const FrequencyBox& box) {
    RealBasis basis;
    const FoolingSolve solve = fooling_solve(points, spec, box, basis);
    if (!solve.feasible) {
        std::ostringstream os;
        os << "fooling_function: no unit-norm class member vanishes on the nodes with "
              "positive mean (constraint rank "
           << solve.rank << " of " << solve.params
           << " parameters); enlarge the frequency box";
        throw std::invalid_argument(os.str());
    }

    FoolingCertificate cert;
    cert.f = poly_from_theta(basis, spec, solve.theta);
    cert.points = points;
    cert.integral = solve.integral;
    cert.box = box;
    cert.constraint_rank = solve.rank;
    cert.free_parameters = solve.params;
    cert.class_norm_value = class_norm(cert.f, spec);
    cert.residual_max = 0.0;
    for (const auto& x : points)
        cert.residual_max = std::max(cert.residual_max, std::abs(evaluate(cert.f, x)));
    return cert;
}

FoolingCertificate fooling_function(const CubatureRule& rule, const ClassSpec& spec,
                                    const FrequencyBox& box) {
    return fooling_function(rule.all_node_angles(), spec, box);
}

double kappa_lower(const std::vector<std::vector<double>>& points, const ClassSpec& spec,
                   const FrequencyBox& box) {
    RealBasis basis;
    const FoolingSolve solve = fooling_solve(points, spec, box, basis);
    return solve.feasible ? solve.integral : 0.0;
}

double kappa_lower(const CubatureRule& rule, const ClassSpec& spec, const FrequencyBox& box) {
    return kappa_lower(rule.all_node_angles(), spec, box);
}

// ---------------------------------------------------------------------------
// Shifted pairs and the power chain

WitnessPair shifted_pair(const TrigPolynomial& f, const CubatureRule& rule,
                         const ClassSpec* spec) {
    if (!f.is_real(1e-10))
        throw std::invalid_argument("shifted_pair: f must be real-valued");
    if (std::abs(rule.weight_sum() - 1.0) > 1e-12)
        throw std::invalid_argument("shifted_pair: rule weights must sum to 1");

    const TrigPolynomial one = TrigPolynomial::constant(f.dim(), Complex{1.0, 0.0});
    WitnessPair pair;
    pair.f_plus = (f + one).scaled(Complex{0.5, 0.0});
    pair.f_minus = (f - one).scaled(Complex{0.5, 0.0});
    pair.defect_plus = signed_defect(pair.f_plus, rule, 2);
    pair.defect_minus = signed_defect(pair.f_minus, rule, 2);
    const double integral = f.coeff(MultiIndex::zeros(f.dim())).real();
    pair.integration_gap = integral - apply_rule(rule, f).real();
    pair.certified_er_lower = std::abs(pair.integration_gap) / 2.0;
    if (spec) {
        pair.class_norm_plus = class_norm(pair.f_plus, *spec);
        pair.class_norm_minus = class_norm(pair.f_minus, *spec);
    }
    return pair;
}

PowerChainResult power_reduction_witness(const TrigPolynomial& f, const CubatureRule& rule,
                                         int s, double a, const ClassSpec* spec) {
    if (s < 1) throw std::invalid_argument("power_reduction_witness: s must be >= 1");
    if (s > 16) throw std::invalid_argument("power_reduction_witness: s too large");
    if (!(a > 0.0)) throw std::invalid_argument("power_reduction_witness: a must be positive");
    if (!f.is_real(1e-10))
        throw std::invalid_argument("power_reduction_witness: f must be real-valued");
    if (std::abs(rule.weight_sum() - 1.0) > 1e-12)
        throw std::invalid_argument("power_reduction_witness: rule weights must sum to 1");

    PowerChainResult chain;
    chain.s = s;
    chain.q = 1 << s;
    chain.a = a;

    const TrigPolynomial one = TrigPolynomial::constant(f.dim(), Complex{1.0, 0.0});
    const MultiIndex zero = MultiIndex::zeros(f.dim());

    auto gap_of = [&](const TrigPolynomial& g) {
        return g.coeff(zero).real() - apply_rule(rule, g).real();
    };
    chain.integration_gap = gap_of(f);

    TrigPolynomial power = f;  // f^{2^k}
    double c_product = 1.0;
    for (int k = 0; k < s; ++k) {
        PowerChainStage stage;
        stage.k = k;
        // c_k(f^{2^k} +- 1) stays in the unit ball: ||f^{2^k}|| <= a^{2^k - 1}
        // by 2^k - 1 pairwise quasi-algebra reductions
        stage.c_k = 1.0 / (1.0 + std::pow(a, std::pow(2.0, k) - 1.0));
        c_product *= stage.c_k;

        const Complex ck{stage.c_k, 0.0};
        stage.member_plus = (power + one).scaled(ck);
        stage.member_minus = (power - one).scaled(ck);
        if (spec) {
            stage.class_norm_plus = class_norm(stage.member_plus, *spec);
            stage.class_norm_minus = class_norm(stage.member_minus, *spec);
            const double tol = 1.0 + 1e-10;
            if (stage.class_norm_plus > tol || stage.class_norm_minus > tol) {
                std::ostringstream os;
                os << "power_reduction_witness: chain member at stage " << k
                   << " leaves the class (norms " << stage.class_norm_plus << ", "
                   << stage.class_norm_minus << "); the supplied quasi-algebra constant " << a
                   << " does not certify this function";
                throw std::runtime_error(os.str());
            }
        }

        stage.defect2_plus = signed_defect(stage.member_plus, rule, 2);
        stage.defect2_minus = signed_defect(stage.member_minus, rule, 2);
        stage.power_gap = gap_of(power);
        // exact pair identity at L_2
        stage.identity_residual = (stage.defect2_plus - stage.defect2_minus) -
                                  4.0 * stage.c_k * stage.c_k * stage.power_gap;
        const int stage_q = 1 << (k + 1);
        stage.defect_q_plus = signed_defect(stage.member_plus, rule, stage_q);
        stage.defect_q_minus = signed_defect(stage.member_minus, rule, stage_q);

        chain.stages.push_back(std::move(stage));
        if (k + 1 < s) power = pointwise_product(power, power);
    }

    chain.c_product = c_product;
    chain.certified_lq_lower = c_product * std::abs(chain.integration_gap);
    return chain;
}

}  // namespace sampdisc
