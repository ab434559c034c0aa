#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "sampdisc/cubature.hpp"
#include "sampdisc/fourier.hpp"
#include "sampdisc/rng.hpp"

namespace sampdisc::testutil {

inline bool close_abs(double a, double b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double rtol = 1e-9) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rtol * scale;
}

inline MultiIndex mi(std::vector<std::int64_t> v) { return MultiIndex(std::move(v)); }

// Independent evaluator: per-coordinate phase factors multiplied one at a
// time (the library path accumulates a single total phase).
inline Complex evaluate_oracle(const TrigPolynomial& f, const std::vector<double>& x) {
    Complex acc{0.0, 0.0};
    for (const auto& [k, v] : f.coeffs()) {
        Complex factor{1.0, 0.0};
        for (int j = 0; j < f.dim(); ++j) {
            const double phi = static_cast<double>(k[j]) * x[static_cast<std::size_t>(j)];
            factor *= Complex{std::cos(phi), std::sin(phi)};
        }
        acc += v * factor;
    }
    return acc;
}

// Tensor-grid quadrature oracle: mean of g(f(x)) over a grid with
// points_per_dim nodes per coordinate; exact for band-limited integrands
// once the grid out-resolves the support.
template <typename Fn>
double grid_mean(const TrigPolynomial& f, int points_per_dim, Fn&& g) {
    const int d = f.dim();
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(points_per_dim);
    double acc = 0.0;
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] = kTwoPi *
                static_cast<double>(rest % static_cast<std::size_t>(points_per_dim)) /
                static_cast<double>(points_per_dim);
            rest /= static_cast<std::size_t>(points_per_dim);
        }
        acc += g(evaluate_oracle(f, x));
    }
    return acc / static_cast<double>(total);
}

// random polynomial with coefficients on the tensor box, not normalized
inline TrigPolynomial random_poly(int d, std::int64_t box_limit, std::uint64_t seed,
                                  bool real_valued = false) {
    Rng rng(seed);
    TrigPolynomial f(d);
    FrequencyBox::tensor(d, box_limit).for_each([&](const MultiIndex& k) {
        if (real_valued) {
            if (k.is_zero()) {
                f.set_coeff(k, Complex{rng.normal(), 0.0});
            } else if (k.is_positive_representative()) {
                const Complex v{rng.normal(), rng.normal()};
                f.set_coeff(k, v);
                f.set_coeff(-k, std::conj(v));
            }
        } else {
            f.set_coeff(k, Complex{rng.normal(), rng.normal()});
        }
    });
    return f;
}

inline std::vector<double> random_point(int d, Rng& rng) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = kTwoPi * rng.uniform();
    return x;
}

}  // namespace sampdisc::testutil
