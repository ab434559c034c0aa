#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sampdisc/fourier.hpp"

namespace sampdisc {

// Exact node coordinate: the point is 2*pi*num/den, with 0 <= num < den.
// Congruence reasoning for lattice rules never touches floating point.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Fraction&) const = default;
    auto operator<=>(const Fraction&) const = default;
};

struct Rank1Generator {
    std::int64_t m = 1;
    std::vector<std::int64_t> z;  // d entries, 1 <= z_j < max(m, 2)

    Rank1Generator() = default;
    Rank1Generator(std::int64_t m, std::vector<std::int64_t> z);
    int dim() const { return static_cast<int>(z.size()); }
    std::string to_string() const;
};

struct CubatureRule {
    enum class Tag { Fibonacci, Rank1, MonteCarlo, Explicit };

    Tag tag = Tag::Explicit;
    int d = 1;
    std::int64_t m = 1;
    std::vector<Fraction> nodes;   // m*d, row-major
    std::vector<double> weights;   // size m; equal-weight rules carry 1/m
    std::optional<Rank1Generator> generator;  // Fibonacci and Rank1
    std::optional<int> fibonacci_index;
    std::optional<std::uint64_t> seed;        // MonteCarlo

    std::span<const Fraction> node(std::int64_t i) const;
    std::vector<double> node_angles(std::int64_t i) const;
    std::vector<std::vector<double>> all_node_angles() const;
    double weight_sum() const;
    bool is_rank1_structured() const { return generator.has_value(); }
    std::string id() const;
};

// b_0 = b_1 = 1, b_n = b_{n-1} + b_{n-2}; throws std::overflow_error instead
// of wrapping.
std::int64_t fibonacci_number(int n);

// d=2 rule with m = b_n nodes (2*pi*mu/b_n, 2*pi*frac(mu*b_{n-1}/b_n)),
// equal weights; requires n >= 2
CubatureRule fibonacci_rule(int n);

CubatureRule rank1_rule(const Rank1Generator& gen);

// m iid uniform nodes on [0,2pi)^d, weights 1/m, deterministic per seed
CubatureRule monte_carlo_rule(std::int64_t m, int d, std::uint64_t seed);

// weighted sum of point evaluations
Complex apply_rule(const CubatureRule& rule, const TrigPolynomial& f);

// Frequencies the rule integrates to 1 instead of 0: k with (k,z) = 0 mod m.
struct DualLatticeSet {
    Rank1Generator generator;
    FrequencyBox box;
    std::vector<MultiIndex> points;  // lexicographic order; always contains 0
};

bool in_dual_lattice(const Rank1Generator& gen, const MultiIndex& k);
DualLatticeSet dual_lattice(const Rank1Generator& gen, const FrequencyBox& box);

struct ErrorInterval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class WceMethod { Auto, ClosedForm, Enumeration };

struct WceOptions {
    WceMethod method = WceMethod::Auto;
    std::int64_t box_limit = 64;  // tensor enumeration box |k_j| <= box_limit
};

struct WceResult {
    ErrorInterval kappa;        // certified interval for the worst-case error
    WceMethod method_used = WceMethod::Enumeration;
    std::int64_t box_limit = 0;  // 0 for the closed form
    double tail_bound = 0.0;     // analytic bound on the mass outside the box
};

// Worst-case integration error of an equal-weight rank-1 rule over the class
// unit ball: sqrt(sum_{dual\0} F̂_r(k)^2) for W^r_2, sum_{dual\0} F̂_r(k)
// for E^r. Two routes: dual-lattice box enumeration with an analytic tail
// bound, and (for integer exponents) the exact Bernoulli-polynomial closed
// form. Throws for rules without rank-1 structure.
WceResult worst_case_error(const CubatureRule& rule, const ClassSpec& spec, WceOptions opts = {});
WceResult worst_case_error(const Rank1Generator& gen, const ClassSpec& spec, WceOptions opts = {});

bool closed_form_available(const ClassSpec& spec);

bool is_prime(std::int64_t m);

// Exhaustive search over z = (1, a, a^2, ..., a^{d-1}) mod m, prime m,
// minimizing worst_case_error for the class; ties broken by smallest a.
Rank1Generator korobov_search(std::int64_t m, const ClassSpec& spec, WceOptions opts = {});

// Bernoulli polynomial B_n(x), even n <= 16, x in [0,1]
double bernoulli_polynomial(int n, double x);

// S_alpha(x) = 1 + sum_{k != 0} e^{2 pi i k x} / |k|^alpha for even alpha,
// evaluated through the Bernoulli identity; exact coordinate sums of the
// closed-form route
double one_dim_character_sum(int alpha, double frac_x);

// 1D truncated kernel sums and tails for exponent alpha = p*r > 1:
//   full_sum_1d  = 1 + 2 sum_{k>=1} k^-alpha   (truncated at K)
//   tail_1d      = 2 K^{1-alpha}/(alpha-1) >= 2 sum_{k>K} k^-alpha
// and the product-minus-truncation bound on the mass outside the tensor box.
double truncated_full_sum_1d(double alpha, std::int64_t K);
double tail_bound_1d(double alpha, std::int64_t K);
double box_tail_bound(double alpha, std::int64_t K, int d);

}  // namespace sampdisc
