#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sampdisc/prob_bounds.hpp"
#include "sampdisc/rng.hpp"
#include "test_util.hpp"

using namespace sampdisc;
using namespace sampdisc::testutil;

TEST_CASE("mc_mse: constant, cosine, simulation oracle") {
    const TrigPolynomial one = TrigPolynomial::constant(1, Complex{1.0, 0.0});
    CHECK(mc_mse(one, 7).exact_mse == 0.0);

    TrigPolynomial cosx(1);
    cosx.set_coeff(mi({1}), Complex{0.5, 0.0});
    cosx.set_coeff(mi({-1}), Complex{0.5, 0.0});
    const McMse mse = mc_mse(cosx, 10);
    CHECK(close_abs(mse.exact_mse, 0.05, 1e-15));
    CHECK(close_abs(mse.upper_bound, 0.05, 1e-15));

    // empirical MSE over seeded node draws within 3 standard errors
    const TrigPolynomial f = random_poly(1, 2, 313, true);
    const std::int64_t m = 12;
    const double exact = mc_mse(f, m).exact_mse;
    const double integral = f.coeff(mi({0})).real();
    const int trials = 5000;
    double sum = 0.0, sum4 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const CubatureRule rule =
            monte_carlo_rule(m, 1, derive_seed(999, static_cast<std::uint64_t>(t)));
        const double err = integral - apply_rule(rule, f).real();
        sum += err * err;
        sum4 += err * err * err * err;
    }
    const double mean = sum / trials;
    const double se = std::sqrt(std::max(0.0, sum4 / trials - mean * mean) / trials);
    CHECK(std::abs(mean - exact) <= 3.0 * se);
}

TEST_CASE("hoeffding tail") {
    CHECK(close_rel(hoeffding_tail(800, 0.1, 1.0), 2.0 * std::exp(-1.0), 1e-14));
    CHECK(hoeffding_tail(800, 1e-9, 1.0) == 1.0);  // clamp

    // monotone nonincreasing in m and eta
    double prev = 2.0;
    for (std::int64_t m = 100; m <= 2000; m += 100) {
        const double v = hoeffding_tail(m, 0.1, 1.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    prev = 2.0;
    for (double eta = 0.01; eta < 1.0; eta += 0.01) {
        const double v = hoeffding_tail(500, eta, 1.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(hoeffding_tail(0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("bernstein tail") {
    // 2 exp(-1000 * 0.01 / (2 (1 + 1/15))) = 2 exp(-4.6875)
    CHECK(close_rel(bernstein_tail(1000, 0.1, 1.0, 1.0), 2.0 * std::exp(-4.6875), 1e-13));
    CHECK(close_abs(bernstein_tail(1000, 0.1, 1.0, 1.0), 0.01841936320793628, 1e-12));

    // small variance regime: bernstein beats hoeffding with M2 << M_inf = M
    for (double eta : {0.01, 0.05, 0.1}) {
        const double b = bernstein_tail(2000, eta, 0.05, 1.0);
        const double h = hoeffding_tail(2000, eta, 1.0);
        CHECK(b < h);
    }

    double prev = 2.0;
    for (std::int64_t m = 100; m <= 3000; m += 100) {
        const double v = bernstein_tail(m, 0.1, 1.0, 1.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("finite class success bound") {
    const FiniteClassBound single = finite_class_success(800, 0.1, 1.0, 1);
    CHECK(close_rel(single.success_lb, 1.0 - 2.0 * std::exp(-1.0), 1e-13));

    // unclamped identity: success + card * hoeffding = 1
    const double h = hoeffding_tail(800, 0.1, 1.0);
    CHECK(close_abs(single.success_lb + h, 1.0, 1e-14));

    // minimal m for positivity brackets the sign change
    for (std::int64_t card : {1LL, 10LL, 1000LL}) {
        const FiniteClassBound fc = finite_class_success(10, 0.2, 1.0, card);
        const std::int64_t m_min = fc.minimal_m_positive;
        CHECK(finite_class_success(m_min, 0.2, 1.0, card).success_lb > 0.0);
        if (m_min > 1)
            CHECK(finite_class_success(m_min - 1, 0.2, 1.0, card).success_lb == 0.0);
    }

    // huge class with fixed m: bound collapses to 0
    CHECK(finite_class_success(100, 0.1, 1.0, 1000000000LL).success_lb == 0.0);
}

TEST_CASE("dyadic chaining quantities") {
    // eps_n = n^{-1/4}, M = 1, eta = 8 * 2^{-3}: J = 12 by construction
    const EntropySequence seq = EntropySequence::power_law(1.0, 0.25, 1.0);
    const double eta = 8.0 * std::pow(2.0, -3.0);
    const DyadicChainingResult out = bt3_quantities(seq, eta);
    CHECK(out.J == 12);

    // defining inequality: eps_{2^J} <= eta/(8M) < eps_{2^{J-1}}
    CHECK(seq.epsilon(std::int64_t{1} << out.J) <= eta / 8.0);
    CHECK(seq.epsilon(std::int64_t{1} << (out.J - 1)) > eta / 8.0);

    // S_J against the direct summation oracle
    double s = 0.0;
    for (int j = 1; j <= out.J; ++j)
        s += std::pow(2.0, (j + 1) / 2.0) *
             std::pow(static_cast<double>(std::int64_t{1} << (j - 1)), -0.25);
    CHECK(close_rel(out.S_J, s, 1e-13));

    // required m satisfies the stated inequality tightly
    const double lhs = static_cast<double>(out.required_m) * (eta / out.S_J) * (eta / out.S_J);
    CHECK(lhs >= 480.0);
    const double lhs_prev =
        static_cast<double>(out.required_m - 1) * (eta / out.S_J) * (eta / out.S_J);
    CHECK(lhs_prev < 480.0);

    // doubling eta never increases J or S_J
    const DyadicChainingResult bigger = bt3_quantities(seq, 2.0 * eta);
    CHECK(bigger.J <= out.J);
    CHECK(bigger.S_J <= out.S_J);

    // explicit list too short to reach the level
    const EntropySequence short_list = EntropySequence::explicit_list({0.9, 0.8, 0.7, 0.6}, 1.0);
    CHECK_THROWS_AS(bt3_quantities(short_list, 1e-6), std::out_of_range);
}

TEST_CASE("bc2 required sample size") {
    CHECK(bc2_required_m(1.0, 0.25, 1.0) == 1);
    CHECK(bc2_required_m(0.1, 0.25, 100.0) == 1000000);
    // halving eta multiplies the requirement by 2^{1/r} = 16
    const std::int64_t base = bc2_required_m(0.5, 0.25, 100.0);
    const std::int64_t halved = bc2_required_m(0.25, 0.25, 100.0);
    CHECK(halved == base * 16);

    CHECK_THROWS_AS(bc2_required_m(0.1, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bc2_required_m(0.1, 0.75, 1.0), std::invalid_argument);
}

TEST_CASE("covering estimate") {
    // three well separated harmonics and one duplicate
    std::vector<TrigPolynomial> family;
    for (int i = 0; i < 3; ++i) {
        TrigPolynomial f(1);
        f.set_coeff(mi({i + 1}), Complex{1.0, 0.0});
        f.set_coeff(mi({-(i + 1)}), Complex{1.0, 0.0});
        family.push_back(f);
    }
    family.push_back(family[0]);

    // eps beyond the family diameter: one ball suffices
    CHECK(covering_estimate(family, 100.0, 16) == 1);
    // pairwise distances of distinct harmonics exceed 2*eps for small eps
    CHECK(covering_estimate(family, 0.01, 16) == 3);
    // nested: smaller eps never needs fewer balls
    CHECK(covering_estimate(family, 0.01, 16) >= covering_estimate(family, 0.02, 16));
}

TEST_CASE("random design: trivial family has zero defects") {
    RandomDesignConfig config;
    config.spec = ClassSpec::sobolev(1.0, 2);
    config.box = FrequencyBox::tensor(2, 1);
    config.m_list = {4};
    config.trials = 1;
    config.eta_grid = {0.5};
    config.explicit_family = {{TrigPolynomial::constant(2, Complex{1.0, 0.0})}};
    const RandomDesignReport report = random_design_experiment(config);
    CHECK(report.rows.size() == 1);
    CHECK(close_abs(report.rows[0].worst_sup, 0.0, 1e-14));
}

TEST_CASE("random design: reproducible and below the union bound") {
    RandomDesignConfig config;
    config.spec = ClassSpec::sobolev(1.0, 2);
    config.box = FrequencyBox::tensor(2, 2);
    config.m_list = {8, 32};
    config.trials = 500;
    config.family_size = 4;
    config.seed = 20240810;
    config.eta_grid = {0.5, 1.0, 2.0, 4.0, 8.0};
    const RandomDesignReport a = random_design_experiment(config);
    const RandomDesignReport b = random_design_experiment(config);

    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].best_sup == b.rows[i].best_sup);
        CHECK(a.rows[i].median_sup == b.rows[i].median_sup);
        CHECK(a.rows[i].worst_sup == b.rows[i].worst_sup);
    }

    // (B4) is a true bound: empirical tail fraction stays under the union
    // bound (99% cushion) wherever the bound is informative
    const double z99 = 2.326;
    for (const auto& row : a.rows) {
        for (const auto& tail : row.tails) {
            if (tail.union_bound >= 1.0) continue;
            const double cushion = z99 * std::sqrt(tail.union_bound * (1.0 - tail.union_bound) /
                                                   static_cast<double>(config.trials)) +
                                   0.5 / static_cast<double>(config.trials);
            CHECK(tail.empirical_fraction <= tail.union_bound + cushion);
        }
    }

    for (const auto& row : a.rows) {
        CHECK(row.best_sup <= row.median_sup);
        CHECK(row.median_sup <= row.worst_sup);
    }
}

TEST_CASE("random design: best-over-trials decays roughly like m^{-1/2}") {
    RandomDesignConfig config;
    config.spec = ClassSpec::sobolev(1.0, 2);
    config.box = FrequencyBox::tensor(2, 2);
    config.m_list = {8, 32, 128, 512};
    config.trials = 60;
    config.family_size = 4;
    config.seed = 7;
    const RandomDesignReport report = random_design_experiment(config);

    // two-point slope between the extremes of the best-over-trials envelope
    const double slope = std::log(report.rows.front().best_sup / report.rows.back().best_sup) /
                         std::log(static_cast<double>(report.rows.back().m) /
                                  static_cast<double>(report.rows.front().m));
    CHECK(slope > 0.25);
    CHECK(slope < 0.9);
}
