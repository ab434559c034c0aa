#include "sampdisc/experiments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sampdisc/io.hpp"
#include "sampdisc/lower_bounds.hpp"
#include "sampdisc/rng.hpp"

#include <nlohmann/json.hpp>

namespace sampdisc {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RateFitReport rate_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 4) throw std::invalid_argument("rate_fit: needs at least 4 pairs");
    std::set<double> distinct;
    for (const auto& [m, e] : pairs) {
        if (!(m >= 3.0)) throw std::invalid_argument("rate_fit: needs m >= 3 (log log defined)");
        if (!(e > 0.0)) throw std::invalid_argument("rate_fit: errors must be positive");
        distinct.insert(m);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("rate_fit: degenerate design, needs >= 3 distinct m");

    const auto n = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = pairs[static_cast<std::size_t>(i)].first;
        X(i, 0) = -std::log(m);
        X(i, 1) = std::log(std::log(m));
        X(i, 2) = 1.0;
        y(i) = std::log(pairs[static_cast<std::size_t>(i)].second);
    }
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);

    RateFitReport report;
    report.pairs = pairs;
    report.r_hat = beta(0);
    report.beta_hat = beta(1);
    report.c_hat = beta(2);
    report.residual_rms = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(n));
    return report;
}

void ExperimentConfig::validate() const {
    if (q <= 0 || q % 2 != 0) throw std::invalid_argument("config: q must be even and positive");
    if (n_samples < 0) throw std::invalid_argument("config: negative sample count");
    switch (family.type) {
        case RuleFamilyConfig::Type::Fibonacci:
            if (family.fib_lo < 2 || family.fib_hi < family.fib_lo)
                throw std::invalid_argument("config: empty or invalid fibonacci range");
            if (spec.d != 2)
                throw std::invalid_argument("config: fibonacci rules are 2-dimensional");
            break;
        case RuleFamilyConfig::Type::Korobov:
        case RuleFamilyConfig::Type::MonteCarlo:
            if (family.m_list.empty()) throw std::invalid_argument("config: empty rule family");
            break;
    }
    if (csv_name.empty() || json_name.empty())
        throw std::invalid_argument("config: output names must be set");
}

std::string experiment_csv_header() {
    return "# sampdisc experiment csv v1\n"
           "rule_id,m,kappa_lo,kappa_hi,a,bound,witness_er,empirical_sup,fool_integral,"
           "cert_lower,sandwich_ok\n";
}

namespace {

std::string csv_row(const ExperimentRow& row) {
    std::ostringstream os;
    os << row.rule_id << ',' << row.m << ',' << format_double(row.kappa_lo) << ','
       << format_double(row.kappa_hi) << ',' << format_double(row.a) << ','
       << format_double(row.bound) << ',' << format_double(row.witness_er) << ','
       << format_double(row.empirical_sup) << ',' << format_double(row.fool_integral) << ','
       << format_double(row.cert_lower) << ',' << (row.sandwich_ok ? 1 : 0) << '\n';
    return os.str();
}

std::vector<CubatureRule> build_family(const ExperimentConfig& config) {
    std::vector<CubatureRule> rules;
    if (config.family.type == RuleFamilyConfig::Type::Fibonacci) {
        for (int n = config.family.fib_lo; n <= config.family.fib_hi; ++n)
            rules.push_back(fibonacci_rule(n));
    } else {
        for (std::int64_t m : config.family.m_list)
            rules.push_back(rank1_rule(korobov_search(m, config.spec, config.wce)));
    }
    return rules;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);

    ExperimentResult result;
    result.csv_path = (std::filesystem::path(out_dir) / config.csv_name).string();
    result.json_path = (std::filesystem::path(out_dir) / config.json_name).string();

    if (config.family.type == RuleFamilyConfig::Type::MonteCarlo) {
        RandomDesignConfig mc;
        mc.spec = config.spec;
        mc.box = config.sample_box;
        mc.m_list = config.family.m_list;
        mc.trials = config.family.mc_trials;
        mc.family_size = config.n_samples > 0 ? config.n_samples : 8;
        mc.seed = config.seed;
        for (double eta : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) mc.eta_grid.push_back(eta);
        result.mc_report = random_design_experiment(mc);

        std::ostringstream csv;
        csv << "# sampdisc mc-design csv v1\n"
               "m,best_sup,median_sup,worst_sup\n";
        for (const auto& row : result.mc_report->rows)
            csv << row.m << ',' << format_double(row.best_sup) << ','
                << format_double(row.median_sup) << ',' << format_double(row.worst_sup) << '\n';
        write_text_file(result.csv_path, csv.str());
        Json j;
        j["config"] = experiment_config_to_json(config);
        j["mc_report"] = random_design_to_json(*result.mc_report);
        write_text_file(result.json_path, j.dump(2) + "\n");
        return result;
    }

    ClassSpec spec = config.spec;
    const QuasiAlgebraEstimate qa = quasi_algebra_constant(
        spec, config.qa_sweep_limit, FrequencyBox::tensor(spec.d, config.qa_k_limit));
    spec.quasi_algebra_constant = qa.value;

    const std::vector<CubatureRule> rules = build_family(config);

    std::vector<std::pair<double, double>> kappa_pairs, upper_pairs, lower_pairs;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const CubatureRule& rule = rules[i];
        ExperimentRow row;
        row.rule_id = rule.id();
        row.m = rule.m;
        row.a = qa.value;

        const WceResult wce = worst_case_error(rule, spec, config.wce);
        row.kappa_lo = wce.kappa.lo;
        row.kappa_hi = wce.kappa.hi;
        const DiscretizationBound bound = discretization_bound_with_kappa(spec, config.q, wce.kappa);
        row.bound = bound.value;

        const TwoTermWitness witness = two_term_witness(rule, spec, config.q, config.wce.box_limit);
        row.witness_er = witness.achieved_er;

        EmpiricalSupOptions sup_opts;
        sup_opts.witness_box_limit = config.wce.box_limit;
        row.empirical_sup =
            empirical_sup_er(rule, spec, config.q, config.sample_box, config.n_samples,
                             derive_seed(config.seed, static_cast<std::uint64_t>(i)), sup_opts);

        if (config.fool_box_limit > 0) {
            const FrequencyBox fool_box = FrequencyBox::tensor(spec.d, config.fool_box_limit);
            row.fool_integral = kappa_lower(rule, spec, fool_box);
            if (row.fool_integral > 0.0) {
                const FoolingCertificate cert = fooling_function(rule, spec, fool_box);
                const WitnessPair pair = shifted_pair(cert.f, rule, &spec);
                row.cert_lower = pair.certified_er_lower;
            }
        } else {
            row.fool_integral = -1.0;
        }

        const double slack = 1e-12;
        row.sandwich_ok = row.witness_er <= row.empirical_sup + slack &&
                          row.empirical_sup <= row.bound + slack &&
                          (config.q != 2 || row.cert_lower <= row.bound + slack);
        result.all_assertions_passed = result.all_assertions_passed && row.sandwich_ok;

        kappa_pairs.emplace_back(static_cast<double>(rule.m), row.kappa_hi);
        upper_pairs.emplace_back(static_cast<double>(rule.m), row.bound);
        const double lower_env = std::max(row.witness_er, row.cert_lower);
        if (lower_env > 0.0) lower_pairs.emplace_back(static_cast<double>(rule.m), lower_env);

        result.rows.push_back(std::move(row));
    }

    auto try_fit = [](const std::vector<std::pair<double, double>>& pairs)
        -> std::optional<RateFitReport> {
        if (pairs.size() < 4) return std::nullopt;
        for (const auto& [m, e] : pairs)
            if (!(e > 0.0) || !(m >= 3.0)) return std::nullopt;
        return rate_fit(pairs);
    };
    result.kappa_fit = try_fit(kappa_pairs);
    result.upper_fit = try_fit(upper_pairs);
    result.lower_fit = try_fit(lower_pairs);

    std::ostringstream csv;
    csv << experiment_csv_header();
    for (const auto& row : result.rows) csv << csv_row(row);
    write_text_file(result.csv_path, csv.str());

    Json j;
    j["config"] = experiment_config_to_json(config);
    j["quasi_algebra"] = {{"value", qa.value},
                          {"attained_at", qa.attained_at.components()},
                          {"sweep_limit", qa.sweep_limit},
                          {"k_box_limit", qa.k_box_limit}};
    j["rows"] = Json::array();
    for (const auto& row : result.rows) {
        j["rows"].push_back({{"rule_id", row.rule_id},
                             {"m", row.m},
                             {"kappa_lo", row.kappa_lo},
                             {"kappa_hi", row.kappa_hi},
                             {"a", row.a},
                             {"bound", row.bound},
                             {"witness_er", row.witness_er},
                             {"empirical_sup", row.empirical_sup},
                             {"fool_integral", row.fool_integral},
                             {"cert_lower", row.cert_lower},
                             {"sandwich_ok", row.sandwich_ok}});
    }
    if (result.kappa_fit) j["kappa_fit"] = rate_fit_to_json(*result.kappa_fit);
    if (result.upper_fit) j["upper_fit"] = rate_fit_to_json(*result.upper_fit);
    if (result.lower_fit) j["lower_fit"] = rate_fit_to_json(*result.lower_fit);
    j["all_assertions_passed"] = result.all_assertions_passed;
    write_text_file(result.json_path, j.dump(2) + "\n");

    return result;
}

}  // namespace sampdisc
