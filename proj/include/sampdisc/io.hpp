#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "sampdisc/cubature.hpp"
#include "sampdisc/experiments.hpp"
#include "sampdisc/fourier.hpp"
#include "sampdisc/lower_bounds.hpp"
#include "sampdisc/prob_bounds.hpp"

namespace sampdisc {

using Json = nlohmann::json;

// TrigPolynomial: {"d": 2, "coeffs": [[k_1..k_d, re, im], ...]}
Json poly_to_json(const TrigPolynomial& f);
TrigPolynomial poly_from_json(const Json& j);

// ClassSpec: {"kind": "sobolev_mixed"|"korobov", "r": 1.0, "d": 2}
Json class_to_json(const ClassSpec& spec);
ClassSpec class_from_json(const Json& j);

Json box_to_json(const FrequencyBox& box);
FrequencyBox box_from_json(const Json& j);

// CubatureRule: {"tag", "d", "m", "generator"?, "n"?, "seed"?, "nodes"?}
// with nodes as rational pairs; lattice and Monte Carlo rules rebuild from
// their tag data when nodes are omitted.
Json rule_to_json(const CubatureRule& rule, bool with_nodes = false);
CubatureRule rule_from_json(const Json& j);

Json wce_to_json(const WceResult& w);
Json bound_to_json(const DiscretizationBound& b);
Json witness_to_json(const TwoTermWitness& w);
Json fooling_to_json(const FoolingCertificate& cert);
Json witness_pair_to_json(const WitnessPair& pair);
Json power_chain_to_json(const PowerChainResult& chain);
Json rate_fit_to_json(const RateFitReport& fit);
Json random_design_to_json(const RandomDesignReport& report);

Json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sampdisc
