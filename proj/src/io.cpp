#include "sampdisc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sampdisc {

Json poly_to_json(const TrigPolynomial& f) {
    Json j;
    j["d"] = f.dim();
    Json coeffs = Json::array();
    for (const auto& [k, v] : f.coeffs()) {
        Json entry = Json::array();
        for (std::int64_t c : k.components()) entry.push_back(c);
        entry.push_back(v.real());
        entry.push_back(v.imag());
        coeffs.push_back(std::move(entry));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

TrigPolynomial poly_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    TrigPolynomial f(d);
    for (const auto& entry : j.at("coeffs")) {
        if (static_cast<int>(entry.size()) != d + 2)
            throw std::invalid_argument("poly_from_json: bad coefficient entry length");
        std::vector<std::int64_t> comps(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) comps[static_cast<std::size_t>(t)] = entry[static_cast<std::size_t>(t)].get<std::int64_t>();
        const double re = entry[static_cast<std::size_t>(d)].get<double>();
        const double im = entry[static_cast<std::size_t>(d) + 1].get<double>();
        f.set_coeff(MultiIndex(std::move(comps)), Complex{re, im});
    }
    return f;
}

Json class_to_json(const ClassSpec& spec) {
    Json j;
    j["kind"] = spec.kind == ClassSpec::Kind::SobolevMixed ? "sobolev_mixed" : "korobov";
    j["r"] = spec.r;
    j["d"] = spec.d;
    if (spec.quasi_algebra_constant) j["quasi_algebra_constant"] = *spec.quasi_algebra_constant;
    return j;
}

ClassSpec class_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    ClassSpec::Kind k;
    if (kind == "sobolev_mixed" || kind == "sobolev" || kind == "W")
        k = ClassSpec::Kind::SobolevMixed;
    else if (kind == "korobov" || kind == "E")
        k = ClassSpec::Kind::Korobov;
    else
        throw std::invalid_argument("class_from_json: unknown kind '" + kind + "'");
    ClassSpec spec(k, j.at("r").get<double>(), j.at("d").get<int>());
    if (j.contains("quasi_algebra_constant"))
        spec.quasi_algebra_constant = j["quasi_algebra_constant"].get<double>();
    return spec;
}

Json box_to_json(const FrequencyBox& box) {
    Json j;
    j["kind"] = box.kind() == FrequencyBox::Kind::TensorBox ? "tensor" : "hyperbolic_cross";
    j["d"] = box.dim();
    j["limit"] = box.limit();
    return j;
}

FrequencyBox box_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int d = j.at("d").get<int>();
    const auto limit = j.at("limit").get<std::int64_t>();
    if (kind == "tensor") return FrequencyBox::tensor(d, limit);
    if (kind == "hyperbolic_cross" || kind == "hyperbolic")
        return FrequencyBox::hyperbolic_cross(d, limit);
    throw std::invalid_argument("box_from_json: unknown kind '" + kind + "'");
}

Json rule_to_json(const CubatureRule& rule, bool with_nodes) {
    Json j;
    switch (rule.tag) {
        case CubatureRule::Tag::Fibonacci: j["tag"] = "fibonacci"; break;
        case CubatureRule::Tag::Rank1: j["tag"] = "rank1"; break;
        case CubatureRule::Tag::MonteCarlo: j["tag"] = "monte_carlo"; break;
        case CubatureRule::Tag::Explicit: j["tag"] = "explicit"; break;
    }
    j["d"] = rule.d;
    j["m"] = rule.m;
    if (rule.fibonacci_index) j["n"] = *rule.fibonacci_index;
    if (rule.generator) {
        j["generator"] = {{"m", rule.generator->m}, {"z", rule.generator->z}};
    }
    if (rule.seed) j["seed"] = *rule.seed;
    if (with_nodes || rule.tag == CubatureRule::Tag::Explicit) {
        Json nodes = Json::array();
        for (std::int64_t i = 0; i < rule.m; ++i) {
            Json node = Json::array();
            for (const Fraction& frac : rule.node(i)) node.push_back(Json::array({frac.num, frac.den}));
            nodes.push_back(std::move(node));
        }
        j["nodes"] = std::move(nodes);
        if (rule.tag == CubatureRule::Tag::Explicit) j["weights"] = rule.weights;
    }
    return j;
}

CubatureRule rule_from_json(const Json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    if (tag == "fibonacci") return fibonacci_rule(j.at("n").get<int>());
    if (tag == "rank1") {
        const auto& g = j.at("generator");
        return rank1_rule(Rank1Generator(g.at("m").get<std::int64_t>(),
                                         g.at("z").get<std::vector<std::int64_t>>()));
    }
    if (tag == "monte_carlo")
        return monte_carlo_rule(j.at("m").get<std::int64_t>(), j.at("d").get<int>(),
                                j.at("seed").get<std::uint64_t>());
    if (tag == "explicit") {
        CubatureRule rule;
        rule.tag = CubatureRule::Tag::Explicit;
        rule.d = j.at("d").get<int>();
        rule.m = j.at("m").get<std::int64_t>();
        for (const auto& node : j.at("nodes"))
            for (const auto& frac : node)
                rule.nodes.push_back({frac[0].get<std::int64_t>(), frac[1].get<std::int64_t>()});
        rule.weights = j.at("weights").get<std::vector<double>>();
        if (static_cast<std::int64_t>(rule.weights.size()) != rule.m ||
            static_cast<std::int64_t>(rule.nodes.size()) != rule.m * rule.d)
            throw std::invalid_argument("rule_from_json: inconsistent explicit rule");
        return rule;
    }
    throw std::invalid_argument("rule_from_json: unknown tag '" + tag + "'");
}

Json wce_to_json(const WceResult& w) {
    Json j;
    j["kappa_lo"] = w.kappa.lo;
    j["kappa_hi"] = w.kappa.hi;
    j["method"] = w.method_used == WceMethod::ClosedForm ? "closed_form" : "enumeration";
    j["box_limit"] = w.box_limit;
    j["tail_bound"] = w.tail_bound;
    return j;
}

Json bound_to_json(const DiscretizationBound& b) {
    Json j;
    j["value"] = b.value;
    j["a"] = b.a;
    j["kappa_lo"] = b.kappa.lo;
    j["kappa_hi"] = b.kappa.hi;
    j["q"] = b.q;
    return j;
}

Json witness_to_json(const TwoTermWitness& w) {
    Json j;
    j["k_star"] = w.k_star.components();
    j["achieved_er"] = w.achieved_er;
    j["f"] = poly_to_json(w.f);
    return j;
}

Json fooling_to_json(const FoolingCertificate& cert) {
    Json j;
    j["integral"] = cert.integral;
    j["residual_max"] = cert.residual_max;
    j["class_norm"] = cert.class_norm_value;
    j["box"] = box_to_json(cert.box);
    j["constraint_rank"] = cert.constraint_rank;
    j["free_parameters"] = cert.free_parameters;
    j["points"] = cert.points;
    j["f"] = poly_to_json(cert.f);
    return j;
}

Json witness_pair_to_json(const WitnessPair& pair) {
    Json j;
    j["defect_plus"] = pair.defect_plus;
    j["defect_minus"] = pair.defect_minus;
    j["integration_gap"] = pair.integration_gap;
    j["certified_er_lower"] = pair.certified_er_lower;
    j["class_norm_plus"] = pair.class_norm_plus;
    j["class_norm_minus"] = pair.class_norm_minus;
    return j;
}

Json power_chain_to_json(const PowerChainResult& chain) {
    Json j;
    j["s"] = chain.s;
    j["q"] = chain.q;
    j["a"] = chain.a;
    j["c_product"] = chain.c_product;
    j["integration_gap"] = chain.integration_gap;
    j["certified_lq_lower"] = chain.certified_lq_lower;
    j["stages"] = Json::array();
    for (const auto& st : chain.stages) {
        j["stages"].push_back({{"k", st.k},
                               {"c_k", st.c_k},
                               {"class_norm_plus", st.class_norm_plus},
                               {"class_norm_minus", st.class_norm_minus},
                               {"defect2_plus", st.defect2_plus},
                               {"defect2_minus", st.defect2_minus},
                               {"defect_q_plus", st.defect_q_plus},
                               {"defect_q_minus", st.defect_q_minus},
                               {"power_gap", st.power_gap},
                               {"identity_residual", st.identity_residual}});
    }
    return j;
}

Json rate_fit_to_json(const RateFitReport& fit) {
    Json j;
    j["r_hat"] = fit.r_hat;
    j["beta_hat"] = fit.beta_hat;
    j["c_hat"] = fit.c_hat;
    j["residual_rms"] = fit.residual_rms;
    Json pairs = Json::array();
    for (const auto& [m, e] : fit.pairs) pairs.push_back(Json::array({m, e}));
    j["pairs"] = std::move(pairs);
    return j;
}

Json random_design_to_json(const RandomDesignReport& report) {
    Json j;
    j["M_integrand"] = report.M_integrand;
    j["family_size"] = report.family_size;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["class"] = report.class_id;
    j["rows"] = Json::array();
    for (const auto& row : report.rows) {
        Json tails = Json::array();
        for (const auto& tail : row.tails)
            tails.push_back({{"eta", tail.eta},
                             {"empirical_fraction", tail.empirical_fraction},
                             {"union_bound", tail.union_bound}});
        j["rows"].push_back({{"m", row.m},
                             {"best_sup", row.best_sup},
                             {"median_sup", row.median_sup},
                             {"worst_sup", row.worst_sup},
                             {"tails", std::move(tails)}});
    }
    return j;
}

Json experiment_config_to_json(const ExperimentConfig& config) {
    Json j;
    j["class"] = class_to_json(config.spec);
    Json family;
    switch (config.family.type) {
        case RuleFamilyConfig::Type::Fibonacci:
            family["type"] = "fibonacci";
            family["n_lo"] = config.family.fib_lo;
            family["n_hi"] = config.family.fib_hi;
            break;
        case RuleFamilyConfig::Type::Korobov:
            family["type"] = "korobov";
            family["m_list"] = config.family.m_list;
            break;
        case RuleFamilyConfig::Type::MonteCarlo:
            family["type"] = "monte_carlo";
            family["m_list"] = config.family.m_list;
            family["trials"] = config.family.mc_trials;
            break;
    }
    j["family"] = std::move(family);
    j["q"] = config.q;
    j["sample_box"] = box_to_json(config.sample_box);
    j["n_samples"] = config.n_samples;
    j["fool_box_limit"] = config.fool_box_limit;
    j["wce"] = {{"method", config.wce.method == WceMethod::Auto
                               ? "auto"
                               : config.wce.method == WceMethod::ClosedForm ? "closed_form"
                                                                            : "enumeration"},
                {"box_limit", config.wce.box_limit}};
    j["qa"] = {{"sweep_limit", config.qa_sweep_limit}, {"k_limit", config.qa_k_limit}};
    j["seed"] = config.seed;
    j["outputs"] = {{"csv", config.csv_name}, {"json", config.json_name}};
    return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
    ExperimentConfig config;
    config.spec = class_from_json(j.at("class"));
    const auto& family = j.at("family");
    const std::string type = family.at("type").get<std::string>();
    if (type == "fibonacci") {
        config.family.type = RuleFamilyConfig::Type::Fibonacci;
        config.family.fib_lo = family.at("n_lo").get<int>();
        config.family.fib_hi = family.at("n_hi").get<int>();
    } else if (type == "korobov") {
        config.family.type = RuleFamilyConfig::Type::Korobov;
        config.family.m_list = family.at("m_list").get<std::vector<std::int64_t>>();
    } else if (type == "monte_carlo") {
        config.family.type = RuleFamilyConfig::Type::MonteCarlo;
        config.family.m_list = family.at("m_list").get<std::vector<std::int64_t>>();
        if (family.contains("trials")) config.family.mc_trials = family.at("trials").get<int>();
    } else {
        throw std::invalid_argument("config: unknown family type '" + type + "'");
    }
    if (j.contains("q")) config.q = j["q"].get<int>();
    if (j.contains("sample_box")) config.sample_box = box_from_json(j["sample_box"]);
    if (j.contains("n_samples")) config.n_samples = j["n_samples"].get<int>();
    if (j.contains("fool_box_limit")) config.fool_box_limit = j["fool_box_limit"].get<std::int64_t>();
    if (j.contains("wce")) {
        const auto& w = j["wce"];
        if (w.contains("method")) {
            const std::string method = w["method"].get<std::string>();
            config.wce.method = method == "closed_form" ? WceMethod::ClosedForm
                                : method == "enumeration" ? WceMethod::Enumeration
                                                          : WceMethod::Auto;
        }
        if (w.contains("box_limit")) config.wce.box_limit = w["box_limit"].get<std::int64_t>();
    }
    if (j.contains("qa")) {
        if (j["qa"].contains("sweep_limit")) config.qa_sweep_limit = j["qa"]["sweep_limit"].get<std::int64_t>();
        if (j["qa"].contains("k_limit")) config.qa_k_limit = j["qa"]["k_limit"].get<std::int64_t>();
    }
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("outputs")) {
        if (j["outputs"].contains("csv")) config.csv_name = j["outputs"]["csv"].get<std::string>();
        if (j["outputs"].contains("json")) config.json_name = j["outputs"]["json"].get<std::string>();
    }
    config.validate();
    return config;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace sampdisc
