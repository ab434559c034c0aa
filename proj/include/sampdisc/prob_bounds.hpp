#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sampdisc/cubature.hpp"
#include "sampdisc/fourier.hpp"

namespace sampdisc {

// Exact mean squared Monte Carlo integration error and its crude bound.
struct McMse {
    double exact_mse = 0.0;     // (1/m)(||f||_2^2 - |I(f)|^2)
    double upper_bound = 0.0;   // ||f||_2^2 / m
};

McMse mc_mse(const TrigPolynomial& f, std::int64_t m);

// 2 exp(-m eta^2 / (8 M^2)), clamped to [0,1]
double hoeffding_tail(std::int64_t m, double eta, double M);

// 2 exp(-m eta^2 / (2 (M2^2 + 2 M_inf eta / 3))), clamped to [0,1]
double bernstein_tail(std::int64_t m, double eta, double M2, double M_inf);

struct FiniteClassBound {
    double success_lb = 0.0;         // max(0, 1 - 2 card exp(-m eta^2/(8 M^2)))
    std::int64_t minimal_m_positive = 1;  // least m making the bound positive
};

FiniteClassBound finite_class_success(std::int64_t m, double eta, double M,
                                      std::int64_t cardinality);

// Entropy numbers of the class in the uniform norm: either a power law
// C1 n^{-r} or an explicit nonincreasing list; M bounds the class sup norm.
class EntropySequence {
public:
    static EntropySequence power_law(double C1, double r, double M);
    static EntropySequence explicit_list(std::vector<double> values, double M);

    double epsilon(std::int64_t n) const;  // 1-based; throws past list end
    bool defined_at(std::int64_t n) const;
    double M() const { return M_; }
    bool is_power_law() const { return values_.empty(); }
    double power_law_r() const { return r_; }

private:
    EntropySequence() = default;
    double C1_ = 1.0;
    double r_ = 0.0;
    double M_ = 1.0;
    std::vector<double> values_;
};

struct DyadicChainingResult {
    int J = 0;            // minimal j with eps_{2^j} <= eta/(8M)
    double S_J = 0.0;     // sum_{j=1..J} 2^{(j+1)/2} eps_{2^{j-1}}
    std::int64_t required_m = 1;  // least m with m (eta/S_J)^2 >= 480 M^2
};

DyadicChainingResult bt3_quantities(const EntropySequence& seq, double eta);

// least m with m eta^{1/r} >= C1, for entropy decay exponent r in (0, 1/2)
std::int64_t bc2_required_m(double eta, double r, double C1);

// Greedy sup-norm epsilon-cover of a finite family, distances taken over a
// tensor grid with grid_per_dim points per coordinate. Upper bound on the
// covering number under the grid metric.
int covering_estimate(const std::vector<TrigPolynomial>& family, double eps, int grid_per_dim);

struct RandomDesignConfig {
    ClassSpec spec = ClassSpec::sobolev(1.0, 2);
    FrequencyBox box = FrequencyBox::tensor(2, 2);
    std::vector<std::int64_t> m_list;
    int trials = 100;
    int family_size = 8;
    std::vector<double> eta_grid;
    std::uint64_t seed = 1;
    bool real_valued = true;
    // when set, used instead of random unit-ball draws
    std::optional<std::vector<TrigPolynomial>> explicit_family;
};

struct RandomDesignTailRow {
    double eta = 0.0;
    double empirical_fraction = 0.0;
    double union_bound = 1.0;  // clamped (B4)-style failure bound
};

struct RandomDesignRow {
    std::int64_t m = 0;
    double best_sup = 0.0;    // min over trials of the family sup-defect
    double median_sup = 0.0;
    double worst_sup = 0.0;
    std::vector<RandomDesignTailRow> tails;
};

struct RandomDesignReport {
    double M_integrand = 0.0;  // certified sup bound on the squared family
    int family_size = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string class_id;
    std::vector<RandomDesignRow> rows;
};

// Draws `trials` Monte Carlo node sets per m, measures the family
// sup-defect, and puts empirical tail fractions side by side with the
// union-bound predictions. Bit-reproducible for a fixed seed.
RandomDesignReport random_design_experiment(const RandomDesignConfig& config);

}  // namespace sampdisc
