#include "sampdisc/discretization.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "sampdisc/rng.hpp"

namespace sampdisc {

void write_defect_csv(std::ostream& out, std::span<const DefectRecord> records) {
    out << "rule_id,class,q,m,signed_defect,er_abs\n";
    char buf[64];
    for (const auto& rec : records) {
        out << rec.rule_id << ',' << rec.class_id << ',' << rec.q << ',' << rec.m << ',';
        std::snprintf(buf, sizeof buf, "%.17g", rec.signed_defect);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", rec.er_abs());
        out << buf << '\n';
    }
}

double signed_defect(const TrigPolynomial& f, const CubatureRule& rule, int q) {
    if (q <= 0 || q % 2 != 0)
        throw std::invalid_argument("signed_defect: only even positive q is supported");
    if (f.dim() != rule.d) throw std::invalid_argument("signed_defect: dimension mismatch");

    const double norm_q = lq_norm_q(f, q);

    double sampled = 0.0;
    std::vector<double> x(static_cast<std::size_t>(rule.d));
    const int half = q / 2;
    for (std::int64_t i = 0; i < rule.m; ++i) {
        const auto frac = rule.node(i);
        for (int j = 0; j < rule.d; ++j)
            x[static_cast<std::size_t>(j)] = kTwoPi * frac[static_cast<std::size_t>(j)].value();
        const double mod_sq = std::norm(evaluate(f, x));
        double p = mod_sq;
        for (int t = 1; t < half; ++t) p *= mod_sq;
        sampled += rule.weights[static_cast<std::size_t>(i)] * p;
    }
    return norm_q - sampled;
}

double er_abs(const TrigPolynomial& f, const CubatureRule& rule, int q) {
    return std::abs(signed_defect(f, rule, q));
}

DiscretizationBound discretization_bound_with_kappa(const ClassSpec& spec, int q,
                                                    ErrorInterval kappa) {
    if (q <= 0 || q % 2 != 0)
        throw std::invalid_argument("discretization_bound: only even positive q is supported");
    if (!spec.quasi_algebra_constant)
        throw std::logic_error(
            "discretization_bound: spec has no quasi-algebra constant; run "
            "quasi_algebra_constant first and cache the value on the spec");
    DiscretizationBound bound;
    bound.a = *spec.quasi_algebra_constant;
    bound.kappa = kappa;
    bound.q = q;
    // |f|^q is a product of q unit-ball factors, reduced pairwise by q-1
    // quasi-algebra applications
    bound.value = std::pow(bound.a, q - 1) * kappa.hi;
    return bound;
}

DiscretizationBound discretization_bound(const CubatureRule& rule, const ClassSpec& spec, int q,
                                         WceOptions opts) {
    const WceResult wce = worst_case_error(rule, spec, opts);
    return discretization_bound_with_kappa(spec, q, wce.kappa);
}

TwoTermWitness two_term_witness(const CubatureRule& rule, const ClassSpec& spec, int q,
                                std::int64_t search_box_limit) {
    if (!rule.is_rank1_structured())
        throw std::invalid_argument("two_term_witness: requires a rank-1 structured rule");
    if (rule.d != spec.d) throw std::invalid_argument("two_term_witness: dimension mismatch");

    const FrequencyBox box = FrequencyBox::tensor(spec.d, search_box_limit);
    const Rank1Generator& gen = *rule.generator;

    // kernel-largest nonzero dual point; lexicographic tie break
    bool found = false;
    MultiIndex best = MultiIndex::zeros(spec.d);
    double best_kernel = -1.0;
    box.for_each([&](const MultiIndex& k) {
        if (k.is_zero() || !in_dual_lattice(gen, k)) return;
        const double fk = kernel_coefficient(spec, k);
        if (fk > best_kernel || (fk == best_kernel && (!found || k < best))) {
            best_kernel = fk;
            best = k;
            found = true;
        }
    });
    if (!found)
        throw std::invalid_argument("two_term_witness: no nonzero dual point in the search box");

    TwoTermWitness witness{TrigPolynomial(spec.d), best, 0.0};
    if (spec.kind == ClassSpec::Kind::SobolevMixed) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        witness.f.set_coeff(MultiIndex::zeros(spec.d), Complex{inv_sqrt2, 0.0});
        witness.f.set_coeff(best, Complex{best_kernel * inv_sqrt2, 0.0});
    } else {
        witness.f.set_coeff(MultiIndex::zeros(spec.d), Complex{1.0, 0.0});
        witness.f.set_coeff(best, Complex{best_kernel, 0.0});
    }
    witness.achieved_er = er_abs(witness.f, rule, q);
    return witness;
}

double empirical_sup_er(const CubatureRule& rule, const ClassSpec& spec, int q,
                        const FrequencyBox& sample_box, int n_samples, std::uint64_t seed,
                        EmpiricalSupOptions opts) {
    double sup = 0.0;
    if (opts.include_witness && rule.is_rank1_structured()) {
        sup = two_term_witness(rule, spec, q, opts.witness_box_limit).achieved_er;
    }
    for (int i = 0; i < n_samples; ++i) {
        const TrigPolynomial f = random_unit_ball_sample(
            spec, sample_box, derive_seed(seed, static_cast<std::uint64_t>(i)), opts.real_valued);
        sup = std::max(sup, er_abs(f, rule, q));
    }
    return sup;
}

}  // namespace sampdisc
