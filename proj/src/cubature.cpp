#include "sampdisc/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sampdisc/rng.hpp"

namespace sampdisc {

namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rank1Generator / CubatureRule

Rank1Generator::Rank1Generator(std::int64_t m_, std::vector<std::int64_t> z_)
    : m(m_), z(std::move(z_)) {
    if (m < 1) throw std::invalid_argument("Rank1Generator: m must be >= 1");
    if (z.empty()) throw std::invalid_argument("Rank1Generator: empty generator vector");
    for (std::int64_t zj : z) {
        const std::int64_t cap = std::max<std::int64_t>(m, 2);
        if (zj < 1 || zj >= cap)
            throw std::invalid_argument("Rank1Generator: components must satisfy 1 <= z_j < m");
    }
}

std::string Rank1Generator::to_string() const {
    std::ostringstream os;
    os << "m=" << m << ",z=[";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) os << ',';
        os << z[i];
    }
    os << ']';
    return os.str();
}

std::span<const Fraction> CubatureRule::node(std::int64_t i) const {
    return {nodes.data() + i * d, static_cast<std::size_t>(d)};
}

std::vector<double> CubatureRule::node_angles(std::int64_t i) const {
    std::vector<double> x(static_cast<std::size_t>(d));
    const auto frac = node(i);
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = kTwoPi * frac[static_cast<std::size_t>(j)].value();
    return x;
}

std::vector<std::vector<double>> CubatureRule::all_node_angles() const {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) out.push_back(node_angles(i));
    return out;
}

double CubatureRule::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

std::string CubatureRule::id() const {
    std::ostringstream os;
    switch (tag) {
        case Tag::Fibonacci:
            os << "fibonacci(n=" << fibonacci_index.value_or(-1) << ",m=" << m << ')';
            break;
        case Tag::Rank1:
            os << "rank1(" << generator->to_string() << ')';
            break;
        case Tag::MonteCarlo:
            os << "mc(m=" << m << ",d=" << d << ",seed=" << seed.value_or(0) << ')';
            break;
        case Tag::Explicit:
            os << "explicit(m=" << m << ",d=" << d << ')';
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Constructions

std::int64_t fibonacci_number(int n) {
    if (n < 0) throw std::invalid_argument("fibonacci_number: negative index");
    std::int64_t prev = 1, cur = 1;
    for (int i = 2; i <= n; ++i) {
        if (cur > std::numeric_limits<std::int64_t>::max() - prev)
            throw std::overflow_error("fibonacci_number: int64 overflow");
        const std::int64_t next = cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

CubatureRule fibonacci_rule(int n) {
    if (n < 2) throw std::invalid_argument("fibonacci_rule: requires n >= 2");
    const std::int64_t m = fibonacci_number(n);
    const std::int64_t zprev = fibonacci_number(n - 1);

    CubatureRule rule;
    rule.tag = CubatureRule::Tag::Fibonacci;
    rule.d = 2;
    rule.m = m;
    rule.fibonacci_index = n;
    rule.generator = Rank1Generator(m, {1, zprev});  // b_{n-1} < b_n for n >= 2
    rule.nodes.reserve(static_cast<std::size_t>(2 * m));
    rule.weights.assign(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m));
    for (std::int64_t mu = 1; mu <= m; ++mu) {
        rule.nodes.push_back({mu % m, m});
        rule.nodes.push_back({mul_mod(mu, zprev, m), m});
    }
    return rule;
}

CubatureRule rank1_rule(const Rank1Generator& gen) {
    CubatureRule rule;
    rule.tag = CubatureRule::Tag::Rank1;
    rule.d = gen.dim();
    rule.m = gen.m;
    rule.generator = gen;
    rule.nodes.reserve(static_cast<std::size_t>(gen.m) * static_cast<std::size_t>(gen.dim()));
    rule.weights.assign(static_cast<std::size_t>(gen.m), 1.0 / static_cast<double>(gen.m));
    for (std::int64_t nu = 0; nu < gen.m; ++nu)
        for (std::int64_t zj : gen.z) rule.nodes.push_back({mul_mod(nu, zj, gen.m), gen.m});
    return rule;
}

CubatureRule monte_carlo_rule(std::int64_t m, int d, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("monte_carlo_rule: m must be >= 1");
    if (d < 1) throw std::invalid_argument("monte_carlo_rule: dimension must be >= 1");
    constexpr std::int64_t kDen = std::int64_t{1} << 53;

    CubatureRule rule;
    rule.tag = CubatureRule::Tag::MonteCarlo;
    rule.d = d;
    rule.m = m;
    rule.seed = seed;
    rule.nodes.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(d));
    rule.weights.assign(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m));
    Rng rng(seed);
    for (std::int64_t i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            const auto num = static_cast<std::int64_t>(rng.uniform() * static_cast<double>(kDen));
            rule.nodes.push_back({num, kDen});
        }
    return rule;
}

Complex apply_rule(const CubatureRule& rule, const TrigPolynomial& f) {
    if (rule.d != f.dim()) throw std::invalid_argument("apply_rule: dimension mismatch");
    Complex acc{0.0, 0.0};
    std::vector<double> x(static_cast<std::size_t>(rule.d));
    for (std::int64_t i = 0; i < rule.m; ++i) {
        const auto frac = rule.node(i);
        for (int j = 0; j < rule.d; ++j)
            x[static_cast<std::size_t>(j)] = kTwoPi * frac[static_cast<std::size_t>(j)].value();
        acc += rule.weights[static_cast<std::size_t>(i)] * evaluate(f, x);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Dual lattice

bool in_dual_lattice(const Rank1Generator& gen, const MultiIndex& k) {
    if (k.dim() != gen.dim()) throw std::invalid_argument("in_dual_lattice: dimension mismatch");
    __int128 dot = 0;
    for (int j = 0; j < gen.dim(); ++j)
        dot += static_cast<__int128>(k[j]) * gen.z[static_cast<std::size_t>(j)];
    const auto r = static_cast<std::int64_t>(dot % gen.m);
    return pos_mod(r, gen.m) == 0;
}

DualLatticeSet dual_lattice(const Rank1Generator& gen, const FrequencyBox& box) {
    if (box.dim() != gen.dim()) throw std::invalid_argument("dual_lattice: dimension mismatch");
    DualLatticeSet set{gen, box, {}};
    box.for_each([&](const MultiIndex& k) {
        if (in_dual_lattice(gen, k)) set.points.push_back(k);
    });
    return set;
}

// ---------------------------------------------------------------------------
// Bernoulli-polynomial closed form

double bernoulli_polynomial(int n, double x) {
    // even Bernoulli numbers up to B_16; B_1 = -1/2, odd ones above vanish
    static constexpr double kB[17] = {
        1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0, 0.0,
        5.0 / 66.0, 0.0, -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0, -3617.0 / 510.0};
    if (n < 0 || n > 16) throw std::invalid_argument("bernoulli_polynomial: order out of range");
    // B_n(x) = sum_j C(n,j) B_j x^{n-j}
    double binom = 1.0;
    double result = 0.0;
    std::vector<double> xpow(static_cast<std::size_t>(n) + 1, 1.0);
    for (int p = 1; p <= n; ++p) xpow[static_cast<std::size_t>(p)] = xpow[static_cast<std::size_t>(p - 1)] * x;
    for (int j = 0; j <= n; ++j) {
        result += binom * kB[j] * xpow[static_cast<std::size_t>(n - j)];
        binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    return result;
}

double one_dim_character_sum(int alpha, double frac_x) {
    if (alpha < 2 || alpha % 2 != 0)
        throw std::invalid_argument("one_dim_character_sum: alpha must be a positive even integer");
    double factorial = 1.0;
    for (int i = 2; i <= alpha; ++i) factorial *= static_cast<double>(i);
    const double sign = (alpha / 2) % 2 == 0 ? -1.0 : 1.0;
    return 1.0 + sign * std::pow(kTwoPi, alpha) / factorial * bernoulli_polynomial(alpha, frac_x);
}

// ---------------------------------------------------------------------------
// Tail bounds

double truncated_full_sum_1d(double alpha, std::int64_t K) {
    double acc = 0.0;
    for (std::int64_t k = K; k >= 1; --k) acc += std::pow(static_cast<double>(k), -alpha);
    return 1.0 + 2.0 * acc;
}

double tail_bound_1d(double alpha, std::int64_t K) {
    if (!(alpha > 1.0)) throw std::invalid_argument("tail_bound_1d: needs alpha > 1");
    if (K < 1) throw std::invalid_argument("tail_bound_1d: needs K >= 1");
    return 2.0 * std::pow(static_cast<double>(K), 1.0 - alpha) / (alpha - 1.0);
}

double box_tail_bound(double alpha, std::int64_t K, int d) {
    const double s = truncated_full_sum_1d(alpha, K);
    const double t = tail_bound_1d(alpha, K);
    return std::pow(s + t, d) - std::pow(s, d);
}

// ---------------------------------------------------------------------------
// Worst-case error

bool closed_form_available(const ClassSpec& spec) {
    const double alpha = spec.kind == ClassSpec::Kind::SobolevMixed ? 2.0 * spec.r : spec.r;
    const double rounded = std::round(alpha);
    if (std::abs(alpha - rounded) > 1e-12) return false;
    const auto ia = static_cast<int>(rounded);
    return ia >= 2 && ia % 2 == 0 && ia <= 16;
}

WceResult worst_case_error(const Rank1Generator& gen, const ClassSpec& spec, WceOptions opts) {
    if (gen.dim() != spec.d) throw std::invalid_argument("worst_case_error: dimension mismatch");
    const bool sobolev = spec.kind == ClassSpec::Kind::SobolevMixed;
    const double alpha = sobolev ? 2.0 * spec.r : spec.r;

    WceMethod method = opts.method;
    if (method == WceMethod::Auto)
        method = closed_form_available(spec) ? WceMethod::ClosedForm : WceMethod::Enumeration;

    WceResult result;
    result.method_used = method;

    if (method == WceMethod::ClosedForm) {
        if (!closed_form_available(spec))
            throw std::invalid_argument("worst_case_error: closed form needs an even integer exponent");
        const auto ia = static_cast<int>(std::round(alpha));
        // (1/m) sum_nu prod_j S_alpha({nu z_j / m}) equals the dual-lattice
        // kernel sum over all of Z^d, including the 0 term
        double sum = 0.0, comp = 0.0;
        for (std::int64_t nu = 0; nu < gen.m; ++nu) {
            double term = 1.0;
            for (std::int64_t zj : gen.z) {
                const std::int64_t num = mul_mod(nu, zj, gen.m);
                term *= one_dim_character_sum(ia, static_cast<double>(num) / static_cast<double>(gen.m));
            }
            const double y = term - comp;  // Kahan
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double dual_sum = sum / static_cast<double>(gen.m) - 1.0;
        const double value = sobolev ? std::sqrt(std::max(dual_sum, 0.0)) : std::max(dual_sum, 0.0);
        result.kappa = {value, value};
        result.box_limit = 0;
        result.tail_bound = 0.0;
        return result;
    }

    const std::int64_t K = opts.box_limit;
    if (K < 1) throw std::invalid_argument("worst_case_error: enumeration box must be >= 1");
    const FrequencyBox box = FrequencyBox::tensor(spec.d, K);
    double partial = 0.0;
    box.for_each([&](const MultiIndex& k) {
        if (k.is_zero() || !in_dual_lattice(gen, k)) return;
        double term = 1.0;
        for (std::int64_t v : k.components()) term *= std::pow(static_cast<double>(k_star(v)), -alpha);
        partial += term;
    });
    const double tail = box_tail_bound(alpha, K, spec.d);
    result.box_limit = K;
    result.tail_bound = tail;
    if (sobolev)
        result.kappa = {std::sqrt(partial), std::sqrt(partial + tail)};
    else
        result.kappa = {partial, partial + tail};
    return result;
}

WceResult worst_case_error(const CubatureRule& rule, const ClassSpec& spec, WceOptions opts) {
    if (!rule.is_rank1_structured())
        throw std::invalid_argument(
            "worst_case_error: rule has no rank-1 structure; use empirical estimation instead");
    return worst_case_error(*rule.generator, spec, opts);
}

// ---------------------------------------------------------------------------
// Korobov search

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t p = 2; p * p <= m; ++p)
        if (m % p == 0) return false;
    return true;
}

Rank1Generator korobov_search(std::int64_t m, const ClassSpec& spec, WceOptions opts) {
    if (!is_prime(m)) throw std::invalid_argument("korobov_search: m must be prime");
    if (spec.d < 2) throw std::invalid_argument("korobov_search: requires d >= 2");

    std::optional<Rank1Generator> best;
    double best_quality = std::numeric_limits<double>::infinity();
    for (std::int64_t a = 1; a < m; ++a) {
        std::vector<std::int64_t> z(static_cast<std::size_t>(spec.d));
        std::int64_t power = 1;  // stays in [1, m-1]: m prime, a nonzero
        for (int j = 0; j < spec.d; ++j) {
            z[static_cast<std::size_t>(j)] = power;
            power = mul_mod(power, a, m);
        }
        Rank1Generator cand(m, std::move(z));
        const double quality = worst_case_error(cand, spec, opts).kappa.hi;
        if (quality < best_quality) {
            best_quality = quality;
            best = std::move(cand);
        }
    }
    return *best;
}

}  // namespace sampdisc
