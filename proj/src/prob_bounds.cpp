#include "sampdisc/prob_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sampdisc/discretization.hpp"
#include "sampdisc/rng.hpp"

namespace sampdisc {

McMse mc_mse(const TrigPolynomial& f, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("mc_mse: m must be >= 1");
    const double norm_sq = l2_norm_sq(f);
    const double mean_sq = std::norm(f.coeff(MultiIndex::zeros(f.dim())));
    return {(norm_sq - mean_sq) / static_cast<double>(m), norm_sq / static_cast<double>(m)};
}

double hoeffding_tail(std::int64_t m, double eta, double M) {
    if (m < 1 || !(eta > 0.0) || !(M > 0.0))
        throw std::invalid_argument("hoeffding_tail: needs m >= 1, eta > 0, M > 0");
    const double raw = 2.0 * std::exp(-static_cast<double>(m) * eta * eta / (8.0 * M * M));
    return std::min(raw, 1.0);
}

double bernstein_tail(std::int64_t m, double eta, double M2, double M_inf) {
    if (m < 1 || !(eta > 0.0) || !(M2 > 0.0) || !(M_inf > 0.0))
        throw std::invalid_argument("bernstein_tail: needs positive parameters");
    const double denom = 2.0 * (M2 * M2 + 2.0 * M_inf * eta / 3.0);
    const double raw = 2.0 * std::exp(-static_cast<double>(m) * eta * eta / denom);
    return std::min(raw, 1.0);
}

FiniteClassBound finite_class_success(std::int64_t m, double eta, double M,
                                      std::int64_t cardinality) {
    if (cardinality < 1) throw std::invalid_argument("finite_class_success: cardinality >= 1");
    const double failure = 2.0 * static_cast<double>(cardinality) *
                           std::exp(-static_cast<double>(m) * eta * eta / (8.0 * M * M));
    FiniteClassBound out;
    out.success_lb = std::max(0.0, 1.0 - failure);
    // positive exactly when m > 8 M^2 ln(2 card) / eta^2
    const double threshold = 8.0 * M * M * std::log(2.0 * static_cast<double>(cardinality)) /
                             (eta * eta);
    out.minimal_m_positive = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(threshold)) + 1);
    // guard against floating roundoff at the boundary
    while (1.0 - 2.0 * static_cast<double>(cardinality) *
                     std::exp(-static_cast<double>(out.minimal_m_positive) * eta * eta /
                              (8.0 * M * M)) <=
           0.0)
        ++out.minimal_m_positive;
    return out;
}

// ---------------------------------------------------------------------------
// Entropy machinery

EntropySequence EntropySequence::power_law(double C1, double r, double M) {
    if (!(C1 > 0.0) || !(r > 0.0) || !(M > 0.0))
        throw std::invalid_argument("EntropySequence: positive C1, r, M required");
    EntropySequence seq;
    seq.C1_ = C1;
    seq.r_ = r;
    seq.M_ = M;
    return seq;
}

EntropySequence EntropySequence::explicit_list(std::vector<double> values, double M) {
    if (values.empty()) throw std::invalid_argument("EntropySequence: empty list");
    if (!(M > 0.0)) throw std::invalid_argument("EntropySequence: positive M required");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("EntropySequence: values must be positive");
        if (i > 0 && values[i] > values[i - 1])
            throw std::invalid_argument("EntropySequence: values must be nonincreasing");
    }
    EntropySequence seq;
    seq.values_ = std::move(values);
    seq.M_ = M;
    return seq;
}

bool EntropySequence::defined_at(std::int64_t n) const {
    if (n < 1) return false;
    return values_.empty() || n <= static_cast<std::int64_t>(values_.size());
}

double EntropySequence::epsilon(std::int64_t n) const {
    if (!defined_at(n))
        throw std::out_of_range("EntropySequence: index beyond the explicit list");
    if (values_.empty()) return C1_ * std::pow(static_cast<double>(n), -r_);
    return values_[static_cast<std::size_t>(n - 1)];
}

DyadicChainingResult bt3_quantities(const EntropySequence& seq, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("bt3_quantities: eta must be positive");
    const double target = eta / (8.0 * seq.M());

    int J = -1;
    for (int j = 0; j < 63; ++j) {
        const std::int64_t n = std::int64_t{1} << j;
        if (!seq.defined_at(n))
            throw std::out_of_range(
                "bt3_quantities: entropy list too short to determine the dyadic level");
        if (seq.epsilon(n) <= target) {
            J = j;
            break;
        }
    }
    if (J < 0) throw std::out_of_range("bt3_quantities: dyadic level not reachable");

    DyadicChainingResult out;
    out.J = J;
    out.S_J = 0.0;
    for (int j = 1; j <= J; ++j)
        out.S_J += std::pow(2.0, (j + 1) / 2.0) * seq.epsilon(std::int64_t{1} << (j - 1));
    if (out.S_J == 0.0) {
        out.required_m = 1;
    } else {
        const double m_needed = 480.0 * seq.M() * seq.M() * (out.S_J / eta) * (out.S_J / eta);
        out.required_m = static_cast<std::int64_t>(std::ceil(m_needed));
        if (out.required_m < 1) out.required_m = 1;
    }
    return out;
}

std::int64_t bc2_required_m(double eta, double r, double C1) {
    if (!(r > 0.0 && r < 0.5))
        throw std::invalid_argument("bc2_required_m: requires r in (0, 1/2)");
    if (!(eta > 0.0) || !(C1 > 0.0))
        throw std::invalid_argument("bc2_required_m: eta and C1 must be positive");
    const double m_needed = C1 / std::pow(eta, 1.0 / r);
    const auto m = static_cast<std::int64_t>(std::ceil(m_needed));
    return std::max<std::int64_t>(1, m);
}

// ---------------------------------------------------------------------------
// Covering estimate

int covering_estimate(const std::vector<TrigPolynomial>& family, double eps, int grid_per_dim) {
    if (family.empty()) return 0;
    if (grid_per_dim < 1) throw std::invalid_argument("covering_estimate: grid must be >= 1");
    const int d = family.front().dim();

    // evaluate every member on the tensor grid once
    std::size_t grid_size = 1;
    for (int j = 0; j < d; ++j) grid_size *= static_cast<std::size_t>(grid_per_dim);
    std::vector<std::vector<Complex>> values(family.size(), std::vector<Complex>(grid_size));
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t g = 0; g < grid_size; ++g) {
        std::size_t rest = g;
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] =
                kTwoPi * static_cast<double>(rest % static_cast<std::size_t>(grid_per_dim)) /
                static_cast<double>(grid_per_dim);
            rest /= static_cast<std::size_t>(grid_per_dim);
        }
        for (std::size_t i = 0; i < family.size(); ++i) values[i][g] = evaluate(family[i], x);
    }

    auto grid_dist = [&](std::size_t i, std::size_t j) {
        double worst = 0.0;
        for (std::size_t g = 0; g < grid_size; ++g)
            worst = std::max(worst, std::abs(values[i][g] - values[j][g]));
        return worst;
    };

    // greedy: first uncovered element becomes a center, its closed eps-ball
    // is removed
    std::vector<bool> covered(family.size(), false);
    int centers = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (covered[i]) continue;
        ++centers;
        covered[i] = true;
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!covered[j] && grid_dist(i, j) <= eps) covered[j] = true;
    }
    return centers;
}

// ---------------------------------------------------------------------------
// Random-design experiment

RandomDesignReport random_design_experiment(const RandomDesignConfig& config) {
    if (config.m_list.empty())
        throw std::invalid_argument("random_design_experiment: empty m list");
    if (config.trials < 1) throw std::invalid_argument("random_design_experiment: trials >= 1");

    std::vector<TrigPolynomial> family;
    if (config.explicit_family) {
        family = *config.explicit_family;
        if (family.empty())
            throw std::invalid_argument("random_design_experiment: explicit family is empty");
    } else {
        family.reserve(static_cast<std::size_t>(config.family_size));
        for (int i = 0; i < config.family_size; ++i)
            family.push_back(random_unit_ball_sample(
                config.spec, config.box, derive_seed(config.seed, 0x10000ULL + static_cast<std::uint64_t>(i)),
                config.real_valued));
    }

    // certified sup bound on the squared integrands: (sum |f̂|)^2 >= ||f^2||_inf
    double M_integrand = 0.0;
    std::vector<double> norm_sq(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        double coeff_l1 = 0.0;
        for (const auto& [k, v] : family[i].coeffs()) coeff_l1 += std::abs(v);
        M_integrand = std::max(M_integrand, coeff_l1 * coeff_l1);
        norm_sq[i] = l2_norm_sq(family[i]);
    }

    RandomDesignReport report;
    report.M_integrand = M_integrand;
    report.family_size = static_cast<int>(family.size());
    report.trials = config.trials;
    report.seed = config.seed;
    report.class_id = config.spec.id();

    for (const std::int64_t m : config.m_list) {
        std::vector<double> sups(static_cast<std::size_t>(config.trials));
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t rule_seed =
                derive_seed(derive_seed(config.seed, static_cast<std::uint64_t>(m)),
                            static_cast<std::uint64_t>(t));
            const CubatureRule rule = monte_carlo_rule(m, config.spec.d, rule_seed);
            double sup = 0.0;
            std::vector<double> x(static_cast<std::size_t>(rule.d));
            for (std::size_t i = 0; i < family.size(); ++i) {
                double sampled = 0.0;
                for (std::int64_t nu = 0; nu < rule.m; ++nu) {
                    const auto frac = rule.node(nu);
                    for (int j = 0; j < rule.d; ++j)
                        x[static_cast<std::size_t>(j)] =
                            kTwoPi * frac[static_cast<std::size_t>(j)].value();
                    sampled += std::norm(evaluate(family[i], x));
                }
                sampled /= static_cast<double>(rule.m);
                sup = std::max(sup, std::abs(norm_sq[i] - sampled));
            }
            sups[static_cast<std::size_t>(t)] = sup;
        }

        RandomDesignRow row;
        row.m = m;
        std::vector<double> sorted = sups;
        std::sort(sorted.begin(), sorted.end());
        row.best_sup = sorted.front();
        row.worst_sup = sorted.back();
        row.median_sup = sorted[sorted.size() / 2];
        for (const double eta : config.eta_grid) {
            RandomDesignTailRow tail;
            tail.eta = eta;
            std::size_t exceed = 0;
            for (double s : sups)
                if (s > eta) ++exceed;
            tail.empirical_fraction = static_cast<double>(exceed) / static_cast<double>(config.trials);
            tail.union_bound = std::min(
                1.0, 2.0 * static_cast<double>(family.size()) *
                         std::exp(-static_cast<double>(m) * eta * eta /
                                  (8.0 * M_integrand * M_integrand)));
            row.tails.push_back(tail);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace sampdisc
