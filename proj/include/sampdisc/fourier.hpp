#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sampdisc/tolerances.hpp"

namespace sampdisc {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// max(|k|, 1); the weight base of the product kernels
std::int64_t k_star(std::int64_t k);

// Frequency vector in Z^d. Ordering is lexicographic (used as a map key and
// for deterministic iteration everywhere).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::int64_t> components);
    static MultiIndex zeros(int d);

    int dim() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
    const std::vector<std::int64_t>& components() const { return c_; }

    MultiIndex operator-() const;
    MultiIndex operator+(const MultiIndex& o) const;
    MultiIndex operator-(const MultiIndex& o) const;

    bool operator==(const MultiIndex& o) const { return c_ == o.c_; }
    std::strong_ordering operator<=>(const MultiIndex& o) const;

    bool is_zero() const;
    // true when the index is the lexicographically positive member of the
    // pair {k, -k}; the zero index is neither
    bool is_positive_representative() const;

    std::string to_string() const;

private:
    std::vector<std::int64_t> c_;
};

// Finite symmetric truncation domain for all coefficient sums. Tensor boxes
// bound every coordinate; hyperbolic crosses bound the product of k_j*.
class FrequencyBox {
public:
    enum class Kind { TensorBox, HyperbolicCross };

    static FrequencyBox tensor(int d, std::int64_t per_coordinate_limit);
    static FrequencyBox hyperbolic_cross(int d, std::int64_t product_limit);

    Kind kind() const { return kind_; }
    int dim() const { return d_; }
    std::int64_t limit() const { return limit_; }

    bool contains(const MultiIndex& k) const;
    void for_each(const std::function<void(const MultiIndex&)>& fn) const;
    std::vector<MultiIndex> points() const;  // deterministic lexicographic order
    std::size_t size() const;

    std::string to_string() const;

private:
    FrequencyBox(Kind kind, int d, std::int64_t limit);
    Kind kind_;
    int d_;
    std::int64_t limit_;
};

// Finitely supported complex Fourier coefficient map; the universal function
// representation of the library. Real-valued functions are the same type
// with conjugate-symmetric coefficients (checked, not duplicated).
class TrigPolynomial {
public:
    using CoeffMap = std::map<MultiIndex, Complex>;

    explicit TrigPolynomial(int d);
    static TrigPolynomial constant(int d, Complex value);

    int dim() const { return d_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }

    Complex coeff(const MultiIndex& k) const;
    void set_coeff(const MultiIndex& k, Complex value);
    void add_coeff(const MultiIndex& k, Complex value);

    // conjugate-symmetry test: f̂(-k) == conj(f̂(k)) within tol
    bool is_real(double tol) const;
    bool is_real() const { return is_real(tolerances().real_symmetry); }

    TrigPolynomial conjugate() const;
    TrigPolynomial scaled(Complex factor) const;
    TrigPolynomial operator+(const TrigPolynomial& o) const;
    TrigPolynomial operator-(const TrigPolynomial& o) const;

private:
    int d_;
    CoeffMap coeffs_;
};

// Which smoothness class: W^r_2 (mixed-derivative ellipsoid) or E^r
// (Korobov coefficient envelope). Owns the kernel exponent r and, once
// computed, the quasi-algebra constant used by the discretization bounds.
struct ClassSpec {
    enum class Kind { SobolevMixed, Korobov };

    Kind kind;
    double r = 1.0;
    int d = 1;
    std::optional<double> quasi_algebra_constant;

    ClassSpec(Kind kind, double r, int d);
    static ClassSpec sobolev(double r, int d);
    static ClassSpec korobov(double r, int d);

    std::string id() const;
};

// product kernel coefficient prod_j (k_j*)^{-r}
double kernel_coefficient(const ClassSpec& spec, const MultiIndex& k);

// pointwise value sum_k f̂(k) e^{i(k,x)}, x in [0,2pi]^d
Complex evaluate(const TrigPolynomial& f, std::span<const double> x);

// sum_k |f̂(k)|^2 (Parseval under the normalized measure)
double l2_norm_sq(const TrigPolynomial& f);

// SobolevMixed: sqrt(sum |f̂(k)/F̂_r(k)|^2). Korobov: max |f̂(k)|/F̂_r(k),
// which is <= 1 exactly when f lies in the class.
double class_norm(const TrigPolynomial& f, const ClassSpec& spec);

// exact (untruncated) coefficient convolution
TrigPolynomial pointwise_product(const TrigPolynomial& f, const TrigPolynomial& g);

// ||f||_q^q for even q, computed exactly as the 0-th coefficient of
// (f conj(f))^{q/2}. Throws for odd or nonpositive q.
double lq_norm_q(const TrigPolynomial& f, int q);

// Truncated convolution-condition ratio at index n: a lower approximation,
// increasing in the box, of the optimal quasi-algebra constant at n.
// SobolevMixed uses the squared-sum form, Korobov the plain sum.
double quasi_algebra_ratio(const ClassSpec& spec, const MultiIndex& n, const FrequencyBox& k_box);

struct QuasiAlgebraEstimate {
    double value = 0.0;
    MultiIndex attained_at;
    std::int64_t sweep_limit = 0;   // |n_j| <= sweep_limit
    std::int64_t k_box_limit = 0;
    ClassSpec::Kind kind = ClassSpec::Kind::SobolevMixed;
};

// max of quasi_algebra_ratio over the tensor sweep |n_j| <= sweep_limit with
// k restricted to k_box. Uses the exact per-coordinate factorization when
// k_box is a tensor box (product kernels tensorize).
QuasiAlgebraEstimate quasi_algebra_constant(const ClassSpec& spec, std::int64_t sweep_limit,
                                            const FrequencyBox& k_box);

// Seeded draw from the class unit sphere on a finite box: profile
// coefficients are normalized and multiplied by the kernel. Deterministic
// per seed; conjugate-symmetric when real_valued.
TrigPolynomial random_unit_ball_sample(const ClassSpec& spec, const FrequencyBox& box,
                                       std::uint64_t seed, bool real_valued);

}  // namespace sampdisc
