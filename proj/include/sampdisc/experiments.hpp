#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sampdisc/cubature.hpp"
#include "sampdisc/discretization.hpp"
#include "sampdisc/fourier.hpp"
#include "sampdisc/prob_bounds.hpp"

namespace sampdisc {

// Least-squares fit of log e = -r log m + beta log log m + c. The log-log
// term is explicit: the rates carry (log m) powers that a pure power fit
// would alias into r.
struct RateFitReport {
    std::vector<std::pair<double, double>> pairs;  // (m, error)
    double r_hat = 0.0;
    double beta_hat = 0.0;
    double c_hat = 0.0;
    double residual_rms = 0.0;
};

// Requires >= 4 pairs, m >= 3, errors > 0, and at least two distinct m.
RateFitReport rate_fit(const std::vector<std::pair<double, double>>& pairs);

struct RuleFamilyConfig {
    enum class Type { Fibonacci, Korobov, MonteCarlo };
    Type type = Type::Fibonacci;
    int fib_lo = 6, fib_hi = 12;
    std::vector<std::int64_t> m_list;  // Korobov and MonteCarlo
    int mc_trials = 100;
};

struct ExperimentConfig {
    ClassSpec spec = ClassSpec::sobolev(1.0, 2);
    RuleFamilyConfig family;
    int q = 2;
    FrequencyBox sample_box = FrequencyBox::tensor(2, 4);
    int n_samples = 50;
    std::int64_t fool_box_limit = 3;   // 0 disables the fooling column
    WceOptions wce;
    std::int64_t qa_sweep_limit = 64;
    std::int64_t qa_k_limit = 64;
    std::uint64_t seed = 1;
    std::string csv_name = "experiment.csv";
    std::string json_name = "experiment.json";

    void validate() const;  // throws on empty family or bad ranges
};

struct ExperimentRow {
    std::string rule_id;
    std::int64_t m = 0;
    double kappa_lo = 0.0;
    double kappa_hi = 0.0;
    double a = 0.0;
    double bound = 0.0;
    double witness_er = 0.0;
    double empirical_sup = 0.0;
    double fool_integral = 0.0;   // negative when the column is disabled
    double cert_lower = 0.0;
    bool sandwich_ok = true;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::optional<RateFitReport> kappa_fit;
    std::optional<RateFitReport> upper_fit;
    std::optional<RateFitReport> lower_fit;
    std::optional<RandomDesignReport> mc_report;  // MonteCarlo family only
    bool all_assertions_passed = true;
    std::string csv_path;
    std::string json_path;
};

// Runs the configured rule family: quality interval, discretization bound,
// empirical sup, witness and fooling lower bounds per rule, plus rate fits
// of the envelopes. Emits one CSV summary and one full JSON report into
// out_dir; identical config and seed produce byte-identical CSV. A
// MonteCarlo family delegates to random_design_experiment.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir);

// frozen CSV schema, versioned in the header comment line
std::string experiment_csv_header();
std::string format_double(double v);  // deterministic shortest round-trip form

}  // namespace sampdisc
