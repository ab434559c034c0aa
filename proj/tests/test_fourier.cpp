#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sampdisc/fourier.hpp"
#include "sampdisc/rng.hpp"
#include "test_util.hpp"

using namespace sampdisc;
using namespace sampdisc::testutil;

namespace {
const double kPi = kTwoPi / 2.0;

TrigPolynomial cos_1d() {
    // cos(x): coefficients 1/2 at +-1
    TrigPolynomial f(1);
    f.set_coeff(mi({1}), Complex{0.5, 0.0});
    f.set_coeff(mi({-1}), Complex{0.5, 0.0});
    return f;
}
}  // namespace

TEST_CASE("kernel coefficient values") {
    CHECK(kernel_coefficient(ClassSpec::sobolev(1.0, 2), mi({0, 0})) == 1.0);
    CHECK(close_abs(kernel_coefficient(ClassSpec::sobolev(1.0, 2), mi({2, 1})), 0.5, 1e-15));
    CHECK(close_abs(kernel_coefficient(ClassSpec::sobolev(0.75, 1), mi({16})), 0.125, 1e-15));
    CHECK_THROWS_AS(kernel_coefficient(ClassSpec::sobolev(1.0, 2), mi({1})), std::invalid_argument);
}

TEST_CASE("kernel tensorizes over coordinates") {
    const ClassSpec spec3 = ClassSpec::sobolev(1.25, 3);
    const ClassSpec spec1 = ClassSpec::sobolev(1.25, 1);
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::int64_t> comps(3);
        for (auto& c : comps) c = static_cast<std::int64_t>(rng.next_u64() % 21) - 10;
        double prod = 1.0;
        for (std::int64_t c : comps) prod *= kernel_coefficient(spec1, mi({c}));
        CHECK(close_rel(kernel_coefficient(spec3, mi(comps)), prod, 1e-14));
    }
}

TEST_CASE("class spec validity ranges") {
    CHECK_THROWS_AS(ClassSpec::sobolev(0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(ClassSpec::korobov(1.0, 1), std::invalid_argument);
    CHECK_NOTHROW(ClassSpec::sobolev(0.51, 1));
    CHECK_NOTHROW(ClassSpec::korobov(1.01, 1));
}

TEST_CASE("evaluate: constants, cosine, random oracle") {
    const TrigPolynomial one = TrigPolynomial::constant(2, Complex{1.0, 0.0});
    CHECK(close_abs(std::abs(evaluate(one, std::vector<double>{1.0, 2.0}) - Complex{1.0, 0.0}), 0.0,
                    1e-15));

    const TrigPolynomial f = cos_1d();
    CHECK(close_abs(evaluate(f, std::vector<double>{0.0}).real(), 1.0, 1e-15));
    CHECK(close_abs(evaluate(f, std::vector<double>{kPi / 3.0}).real(), 0.5, 1e-12));

    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const TrigPolynomial g = random_poly(2, 3, derive_seed(1, static_cast<std::uint64_t>(trial)));
        const std::vector<double> x = random_point(2, rng);
        const Complex lib = evaluate(g, x);
        const Complex oracle = evaluate_oracle(g, x);
        CHECK(std::abs(lib - oracle) <= 1e-9 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("l2 norm: examples and quadrature oracle") {
    CHECK(l2_norm_sq(TrigPolynomial::constant(1, Complex{1.0, 0.0})) == 1.0);

    TrigPolynomial f(2);
    f.set_coeff(mi({0, 0}), Complex{3.0, 0.0});
    f.set_coeff(mi({1, 0}), Complex{0.0, 4.0});
    CHECK(close_abs(l2_norm_sq(f), 25.0, 1e-15));

    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const TrigPolynomial g = random_poly(2, 2, seed);
        // grid of 2*2+2 > 2*box out-resolves |g|^2
        const double quad = grid_mean(g, 6, [](Complex v) { return std::norm(v); });
        CHECK(close_abs(l2_norm_sq(g), quad, 1e-10 * std::max(1.0, l2_norm_sq(g))));
    }
}

TEST_CASE("class norms") {
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    CHECK(close_abs(class_norm(TrigPolynomial::constant(1, Complex{1.0, 0.0}), w11), 1.0, 1e-15));

    TrigPolynomial f(1);
    f.set_coeff(mi({2}), Complex{0.25, 0.0});
    CHECK(close_abs(class_norm(f, w11), 0.5, 1e-15));

    // extremal Korobov element: coefficients equal to the kernel
    const ClassSpec e2 = ClassSpec::korobov(2.0, 2);
    TrigPolynomial g(2);
    FrequencyBox::tensor(2, 2).for_each([&](const MultiIndex& k) {
        g.set_coeff(k, Complex{kernel_coefficient(e2, k), 0.0});
    });
    CHECK(close_abs(class_norm(g, e2), 1.0, 1e-15));
}

TEST_CASE("pointwise product: identity, double angle, evaluation oracle") {
    const TrigPolynomial f = cos_1d();
    const TrigPolynomial one = TrigPolynomial::constant(1, Complex{1.0, 0.0});
    const TrigPolynomial fid = pointwise_product(f, one);
    CHECK(fid.coeffs() == f.coeffs());

    const TrigPolynomial sq = pointwise_product(f, f);
    CHECK(close_abs(sq.coeff(mi({0})).real(), 0.5, 1e-15));
    CHECK(close_abs(sq.coeff(mi({2})).real(), 0.25, 1e-15));
    CHECK(close_abs(sq.coeff(mi({-2})).real(), 0.25, 1e-15));
    CHECK(sq.support_size() == 3);

    Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const TrigPolynomial a = random_poly(2, 2, derive_seed(100, static_cast<std::uint64_t>(trial)));
        const TrigPolynomial b = random_poly(2, 2, derive_seed(200, static_cast<std::uint64_t>(trial)));
        const TrigPolynomial ab = pointwise_product(a, b);
        const std::vector<double> x = random_point(2, rng);
        const Complex lhs = evaluate(ab, x);
        const Complex rhs = evaluate(a, x) * evaluate(b, x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("lq norm: examples and quadrature oracle") {
    CHECK(close_abs(lq_norm_q(TrigPolynomial::constant(1, Complex{1.0, 0.0}), 4), 1.0, 1e-15));
    const TrigPolynomial f = cos_1d();
    CHECK(close_abs(lq_norm_q(f, 2), 0.5, 1e-15));
    // mean of cos^4 over the period
    CHECK(close_abs(lq_norm_q(f, 4), 3.0 / 8.0, 1e-15));
    const double quad4 = grid_mean(f, 16, [](Complex v) {
        const double m = std::norm(v);
        return m * m;
    });
    CHECK(close_abs(lq_norm_q(f, 4), quad4, 1e-12));

    CHECK_THROWS_AS(lq_norm_q(f, 3), std::invalid_argument);
    CHECK_THROWS_AS(lq_norm_q(f, 0), std::invalid_argument);
}

TEST_CASE("quasi-algebra ratio at n=0 matches the zeta closed form") {
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    const double ratio =
        quasi_algebra_ratio(w11, mi({0}), FrequencyBox::tensor(1, 1000000));
    // sum over Z of (k*)^-4 = 1 + pi^4/45
    const double pi4 = kPi * kPi * kPi * kPi;
    CHECK(close_abs(ratio, std::sqrt(1.0 + pi4 / 45.0), 1e-9));
}

TEST_CASE("quasi-algebra ratio: bounded sweep and box monotonicity") {
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    const FrequencyBox box = FrequencyBox::tensor(1, 256);
    const QuasiAlgebraEstimate est = quasi_algebra_constant(w11, 64, box);
    for (std::int64_t n = -64; n <= 64; ++n)
        CHECK(quasi_algebra_ratio(w11, mi({n}), box) <= est.value + 1e-12);

    const double small = quasi_algebra_ratio(w11, mi({3}), FrequencyBox::tensor(1, 8));
    const double large = quasi_algebra_ratio(w11, mi({3}), FrequencyBox::tensor(1, 64));
    CHECK(small <= large + 1e-15);
}

TEST_CASE("quasi-algebra ratio tensorizes") {
    const ClassSpec w12 = ClassSpec::sobolev(1.0, 2);
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    const double r2 = quasi_algebra_ratio(w12, mi({0, 0}), FrequencyBox::tensor(2, 64));
    const double r1 = quasi_algebra_ratio(w11, mi({0}), FrequencyBox::tensor(1, 64));
    CHECK(close_rel(r2, r1 * r1, 1e-9));

    // off-center index as well
    const double s2 = quasi_algebra_ratio(w12, mi({3, -2}), FrequencyBox::tensor(2, 32));
    const double s1a = quasi_algebra_ratio(w11, mi({3}), FrequencyBox::tensor(1, 32));
    const double s1b = quasi_algebra_ratio(w11, mi({-2}), FrequencyBox::tensor(1, 32));
    CHECK(close_rel(s2, s1a * s1b, 1e-9));
}

TEST_CASE("quasi-algebra constant: fast path equals direct sweep") {
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    const FrequencyBox kbox = FrequencyBox::tensor(1, 32);
    const QuasiAlgebraEstimate est = quasi_algebra_constant(w11, 16, kbox);
    double direct = -1.0;
    for (std::int64_t n = -16; n <= 16; ++n)
        direct = std::max(direct, quasi_algebra_ratio(w11, mi({n}), kbox));
    CHECK(close_rel(est.value, direct, 1e-12));

    // d=2 value is the square of the 1D value for tensor boxes
    const ClassSpec w12 = ClassSpec::sobolev(1.0, 2);
    const QuasiAlgebraEstimate est2 =
        quasi_algebra_constant(w12, 16, FrequencyBox::tensor(2, 32));
    CHECK(close_rel(est2.value, est.value * est.value, 1e-12));
}

TEST_CASE("quasi-algebra constant: frozen sweep values") {
    // values pinned from the direct enumeration sweep (the fast path is
    // cross-checked against it above); the max sits at the sweep boundary,
    // not at n = 0 where the ratio is only sqrt(1 + pi^4/45) ~ 1.7789
    const ClassSpec w11 = ClassSpec::sobolev(1.0, 1);
    const QuasiAlgebraEstimate est = quasi_algebra_constant(w11, 64, FrequencyBox::tensor(1, 256));
    CHECK(close_abs(est.value, 2.928837660344, 1e-9));
    CHECK(std::abs(est.attained_at[0]) == 64);

    const ClassSpec w12 = ClassSpec::sobolev(1.0, 2);
    const QuasiAlgebraEstimate est2 = quasi_algebra_constant(w12, 64, FrequencyBox::tensor(2, 256));
    CHECK(close_abs(est2.value, 8.578090040648, 1e-8));

    // with r = 2 the Korobov ratio is the squared r = 1 Sobolev ratio, so the
    // constants coincide across (kind, dimension)
    const ClassSpec e21 = ClassSpec::korobov(2.0, 1);
    const QuasiAlgebraEstimate estE = quasi_algebra_constant(e21, 64, FrequencyBox::tensor(1, 256));
    CHECK(close_rel(estE.value, est2.value, 1e-12));
}

TEST_CASE("quasi-algebra constant: Korobov variant is finite and box-monotone") {
    const ClassSpec e2 = ClassSpec::korobov(2.0, 1);
    const QuasiAlgebraEstimate small =
        quasi_algebra_constant(e2, 32, FrequencyBox::tensor(1, 32));
    const QuasiAlgebraEstimate large =
        quasi_algebra_constant(e2, 32, FrequencyBox::tensor(1, 128));
    CHECK(std::isfinite(small.value));
    CHECK(small.value > 0.0);
    CHECK(small.value <= large.value + 1e-15);
}

TEST_CASE("product norm bound with the computed constant") {
    const ClassSpec w12 = ClassSpec::sobolev(1.0, 2);
    // sweep covers the product support (box 3 + box 3) and the k sum covers
    // the factor supports, so the bound below is certified
    const double a = quasi_algebra_constant(w12, 64, FrequencyBox::tensor(2, 64)).value;
    const FrequencyBox box = FrequencyBox::tensor(2, 3);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const TrigPolynomial f =
            random_unit_ball_sample(w12, box, derive_seed(900, static_cast<std::uint64_t>(i)), false);
        const TrigPolynomial g =
            random_unit_ball_sample(w12, box, derive_seed(901, static_cast<std::uint64_t>(i)), false);
        if (class_norm(pointwise_product(f, g), w12) > a * (1.0 + 1e-10)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("random unit ball samples") {
    const ClassSpec w12 = ClassSpec::sobolev(1.0, 2);
    const FrequencyBox box = FrequencyBox::tensor(2, 3);

    const TrigPolynomial f = random_unit_ball_sample(w12, box, 77, false);
    CHECK(close_abs(class_norm(f, w12), 1.0, 1e-12));
    CHECK_FALSE(f.is_real());

    const TrigPolynomial g = random_unit_ball_sample(w12, box, 78, true);
    CHECK(close_abs(class_norm(g, w12), 1.0, 1e-12));
    CHECK(g.is_real());

    const TrigPolynomial f2 = random_unit_ball_sample(w12, box, 77, false);
    CHECK(f.coeffs() == f2.coeffs());

    const ClassSpec e2 = ClassSpec::korobov(2.0, 2);
    const TrigPolynomial h = random_unit_ball_sample(e2, box, 79, false);
    CHECK(close_abs(class_norm(h, e2), 1.0, 1e-12));

    CHECK_THROWS_AS(random_unit_ball_sample(w12, FrequencyBox::tensor(1, 3), 1, false),
                    std::invalid_argument);
}

TEST_CASE("frequency boxes") {
    const FrequencyBox tb = FrequencyBox::tensor(2, 2);
    CHECK(tb.size() == 25);
    CHECK(tb.contains(mi({2, -2})));
    CHECK_FALSE(tb.contains(mi({3, 0})));

    const FrequencyBox hc = FrequencyBox::hyperbolic_cross(2, 4);
    CHECK(hc.contains(mi({0, 0})));
    CHECK(hc.contains(mi({4, 1})));
    CHECK(hc.contains(mi({2, 2})));
    CHECK_FALSE(hc.contains(mi({3, 2})));
    // symmetric under negation
    for (const MultiIndex& k : hc.points()) CHECK(hc.contains(-k));

    CHECK_THROWS_AS(FrequencyBox::hyperbolic_cross(2, 0), std::invalid_argument);
}

TEST_CASE("real flag agrees with conjugate symmetry") {
    TrigPolynomial f(1);
    f.set_coeff(mi({1}), Complex{0.5, 0.25});
    CHECK_FALSE(f.is_real());
    f.set_coeff(mi({-1}), Complex{0.5, -0.25});
    CHECK(f.is_real());
    const TrigPolynomial fc = f.conjugate();
    CHECK(fc.is_real());
}
