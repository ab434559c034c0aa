#include "sampdisc/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sampdisc/rng.hpp"

namespace sampdisc {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

std::int64_t k_star(std::int64_t k) {
    const std::int64_t a = k < 0 ? -k : k;
    return a < 1 ? 1 : a;
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<std::int64_t> components) : c_(std::move(components)) {
    if (c_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
}

MultiIndex MultiIndex::zeros(int d) {
    if (d < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    return MultiIndex(std::vector<std::int64_t>(static_cast<std::size_t>(d), 0));
}

MultiIndex MultiIndex::operator-() const {
    std::vector<std::int64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (c_.size() != o.c_.size()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    std::vector<std::int64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] + o.c_[i];
    return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    if (c_.size() != o.c_.size()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    std::vector<std::int64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] - o.c_[i];
    return MultiIndex(std::move(out));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& o) const {
    return std::lexicographical_compare_three_way(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

bool MultiIndex::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool MultiIndex::is_positive_representative() const {
    for (std::int64_t v : c_) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// FrequencyBox

FrequencyBox::FrequencyBox(Kind kind, int d, std::int64_t limit)
    : kind_(kind), d_(d), limit_(limit) {}

FrequencyBox FrequencyBox::tensor(int d, std::int64_t per_coordinate_limit) {
    if (d < 1) throw std::invalid_argument("FrequencyBox: dimension must be >= 1");
    if (per_coordinate_limit < 0) throw std::invalid_argument("FrequencyBox: negative limit");
    return FrequencyBox(Kind::TensorBox, d, per_coordinate_limit);
}

FrequencyBox FrequencyBox::hyperbolic_cross(int d, std::int64_t product_limit) {
    if (d < 1) throw std::invalid_argument("FrequencyBox: dimension must be >= 1");
    if (product_limit < 1)
        throw std::invalid_argument("FrequencyBox: hyperbolic cross limit must be >= 1");
    return FrequencyBox(Kind::HyperbolicCross, d, product_limit);
}

bool FrequencyBox::contains(const MultiIndex& k) const {
    if (k.dim() != d_) return false;
    if (kind_ == Kind::TensorBox) {
        for (std::int64_t v : k.components())
            if (v < -limit_ || v > limit_) return false;
        return true;
    }
    std::int64_t prod = 1;
    for (std::int64_t v : k.components()) {
        prod *= k_star(v);
        if (prod > limit_) return false;
    }
    return prod <= limit_;
}

void FrequencyBox::for_each(const std::function<void(const MultiIndex&)>& fn) const {
    // odometer over the enclosing tensor box, lexicographic
    std::vector<std::int64_t> cur(static_cast<std::size_t>(d_), -limit_);
    const std::int64_t lo = -limit_, hi = limit_;
    while (true) {
        MultiIndex k{std::vector<std::int64_t>(cur)};
        if (kind_ == Kind::TensorBox || contains(k)) fn(k);
        int j = d_ - 1;
        while (j >= 0) {
            if (++cur[static_cast<std::size_t>(j)] <= hi) break;
            cur[static_cast<std::size_t>(j)] = lo;
            --j;
        }
        if (j < 0) break;
    }
}

std::vector<MultiIndex> FrequencyBox::points() const {
    std::vector<MultiIndex> out;
    for_each([&](const MultiIndex& k) { out.push_back(k); });
    return out;
}

std::size_t FrequencyBox::size() const {
    if (kind_ == Kind::TensorBox) {
        std::size_t n = 1;
        for (int j = 0; j < d_; ++j) n *= static_cast<std::size_t>(2 * limit_ + 1);
        return n;
    }
    std::size_t n = 0;
    for_each([&](const MultiIndex&) { ++n; });
    return n;
}

std::string FrequencyBox::to_string() const {
    std::ostringstream os;
    os << (kind_ == Kind::TensorBox ? "tensor" : "hyperbolic") << "(d=" << d_ << ",limit=" << limit_
       << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("TrigPolynomial: dimension must be >= 1");
}

TrigPolynomial TrigPolynomial::constant(int d, Complex value) {
    TrigPolynomial f(d);
    if (value != Complex{0.0, 0.0}) f.coeffs_[MultiIndex::zeros(d)] = value;
    return f;
}

Complex TrigPolynomial::coeff(const MultiIndex& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

void TrigPolynomial::set_coeff(const MultiIndex& k, Complex value) {
    if (k.dim() != d_) throw std::invalid_argument("TrigPolynomial: coefficient dimension mismatch");
    if (value == Complex{0.0, 0.0})
        coeffs_.erase(k);
    else
        coeffs_[k] = value;
}

void TrigPolynomial::add_coeff(const MultiIndex& k, Complex value) {
    if (k.dim() != d_) throw std::invalid_argument("TrigPolynomial: coefficient dimension mismatch");
    auto [it, inserted] = coeffs_.try_emplace(k, value);
    if (!inserted) {
        it->second += value;
        if (it->second == Complex{0.0, 0.0}) coeffs_.erase(it);
    } else if (value == Complex{0.0, 0.0}) {
        coeffs_.erase(it);
    }
}

bool TrigPolynomial::is_real(double tol) const {
    for (const auto& [k, v] : coeffs_) {
        const Complex mirrored = coeff(-k);
        if (std::abs(mirrored - std::conj(v)) > tol) return false;
    }
    return true;
}

TrigPolynomial TrigPolynomial::conjugate() const {
    TrigPolynomial out(d_);
    for (const auto& [k, v] : coeffs_) out.coeffs_[-k] = std::conj(v);
    return out;
}

TrigPolynomial TrigPolynomial::scaled(Complex factor) const {
    TrigPolynomial out(d_);
    if (factor == Complex{0.0, 0.0}) return out;
    for (const auto& [k, v] : coeffs_) out.coeffs_[k] = factor * v;
    return out;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& o) const {
    if (d_ != o.d_) throw std::invalid_argument("TrigPolynomial: dimension mismatch");
    TrigPolynomial out = *this;
    for (const auto& [k, v] : o.coeffs_) out.add_coeff(k, v);
    return out;
}

TrigPolynomial TrigPolynomial::operator-(const TrigPolynomial& o) const {
    if (d_ != o.d_) throw std::invalid_argument("TrigPolynomial: dimension mismatch");
    TrigPolynomial out = *this;
    for (const auto& [k, v] : o.coeffs_) out.add_coeff(k, -v);
    return out;
}

// ---------------------------------------------------------------------------
// ClassSpec

ClassSpec::ClassSpec(Kind kind_, double r_, int d_) : kind(kind_), r(r_), d(d_) {
    if (d < 1) throw std::invalid_argument("ClassSpec: dimension must be >= 1");
    if (kind == Kind::SobolevMixed && !(r > 0.5))
        throw std::invalid_argument("ClassSpec: SobolevMixed requires r > 1/2");
    if (kind == Kind::Korobov && !(r > 1.0))
        throw std::invalid_argument("ClassSpec: Korobov requires r > 1");
}

ClassSpec ClassSpec::sobolev(double r, int d) { return ClassSpec(Kind::SobolevMixed, r, d); }
ClassSpec ClassSpec::korobov(double r, int d) { return ClassSpec(Kind::Korobov, r, d); }

std::string ClassSpec::id() const {
    std::ostringstream os;
    os << (kind == Kind::SobolevMixed ? "W" : "E") << "_r";
    os << r << "_d" << d;
    return os.str();
}

// ---------------------------------------------------------------------------
// Operations

double kernel_coefficient(const ClassSpec& spec, const MultiIndex& k) {
    if (k.dim() != spec.d) throw std::invalid_argument("kernel_coefficient: dimension mismatch");
    double value = 1.0;
    for (std::int64_t v : k.components())
        value *= std::pow(static_cast<double>(k_star(v)), -spec.r);
    return value;
}

Complex evaluate(const TrigPolynomial& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.dim())
        throw std::invalid_argument("evaluate: point dimension mismatch");
    Complex acc{0.0, 0.0};
    for (const auto& [k, v] : f.coeffs()) {
        double phase = 0.0;
        for (int j = 0; j < f.dim(); ++j) phase += static_cast<double>(k[j]) * x[static_cast<std::size_t>(j)];
        acc += v * Complex{std::cos(phase), std::sin(phase)};
    }
    return acc;
}

double l2_norm_sq(const TrigPolynomial& f) {
    double acc = 0.0;
    for (const auto& [k, v] : f.coeffs()) acc += std::norm(v);
    return acc;
}

double class_norm(const TrigPolynomial& f, const ClassSpec& spec) {
    if (f.dim() != spec.d) throw std::invalid_argument("class_norm: dimension mismatch");
    if (spec.kind == ClassSpec::Kind::SobolevMixed) {
        double acc = 0.0;
        for (const auto& [k, v] : f.coeffs()) {
            const double fk = kernel_coefficient(spec, k);
            acc += std::norm(v / fk);
        }
        return std::sqrt(acc);
    }
    double worst = 0.0;
    for (const auto& [k, v] : f.coeffs())
        worst = std::max(worst, std::abs(v) / kernel_coefficient(spec, k));
    return worst;
}

TrigPolynomial pointwise_product(const TrigPolynomial& f, const TrigPolynomial& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("pointwise_product: dimension mismatch");
    TrigPolynomial out(f.dim());
    for (const auto& [k, fv] : f.coeffs())
        for (const auto& [l, gv] : g.coeffs()) out.add_coeff(k + l, fv * gv);
    return out;
}

double lq_norm_q(const TrigPolynomial& f, int q) {
    if (q <= 0 || q % 2 != 0)
        throw std::invalid_argument("lq_norm_q: only even positive q is supported");
    const TrigPolynomial mod_sq = pointwise_product(f, f.conjugate());
    TrigPolynomial power = mod_sq;
    for (int i = 1; i < q / 2; ++i) power = pointwise_product(power, mod_sq);
    return power.coeff(MultiIndex::zeros(f.dim())).real();
}

double quasi_algebra_ratio(const ClassSpec& spec, const MultiIndex& n, const FrequencyBox& k_box) {
    if (n.dim() != spec.d || k_box.dim() != spec.d)
        throw std::invalid_argument("quasi_algebra_ratio: dimension mismatch");
    const bool squared = spec.kind == ClassSpec::Kind::SobolevMixed;
    double acc = 0.0;
    k_box.for_each([&](const MultiIndex& k) {
        const double term = kernel_coefficient(spec, k) * kernel_coefficient(spec, n - k);
        acc += squared ? term * term : term;
    });
    const double numerator = squared ? std::sqrt(acc) : acc;
    return numerator / kernel_coefficient(spec, n);
}

namespace {

// 1D ratio sweep shared by the tensor fast path: values for n = -L..L with
// the k sum over [-K, K]
std::vector<double> one_dim_ratio_sweep(const ClassSpec& spec, std::int64_t L, std::int64_t K) {
    const bool squared = spec.kind == ClassSpec::Kind::SobolevMixed;
    const double p = squared ? 2.0 * spec.r : spec.r;
    std::vector<double> kernel_pow(static_cast<std::size_t>(L + K) + 1);
    for (std::int64_t a = 0; a <= L + K; ++a)
        kernel_pow[static_cast<std::size_t>(a)] = std::pow(static_cast<double>(k_star(a)), -p);
    auto kp = [&](std::int64_t v) { return kernel_pow[static_cast<std::size_t>(v < 0 ? -v : v)]; };

    std::vector<double> out(static_cast<std::size_t>(2 * L + 1));
    for (std::int64_t n = -L; n <= L; ++n) {
        double acc = 0.0;
        for (std::int64_t k = -K; k <= K; ++k) acc += kp(k) * kp(n - k);
        // W ratio: p = 2r and the denominator (n*)^{-r} is sqrt(kp(n));
        // E ratio: p = r and the denominator is kp(n) itself
        out[static_cast<std::size_t>(n + L)] =
            squared ? std::sqrt(acc / kp(n)) : acc / kp(n);
    }
    return out;
}

}  // namespace

QuasiAlgebraEstimate quasi_algebra_constant(const ClassSpec& spec, std::int64_t sweep_limit,
                                            const FrequencyBox& k_box) {
    if (sweep_limit < 0) throw std::invalid_argument("quasi_algebra_constant: negative sweep");
    if (k_box.dim() != spec.d)
        throw std::invalid_argument("quasi_algebra_constant: k box dimension mismatch");

    QuasiAlgebraEstimate est;
    est.sweep_limit = sweep_limit;
    est.k_box_limit = k_box.limit();
    est.kind = spec.kind;

    if (k_box.kind() == FrequencyBox::Kind::TensorBox) {
        // kernels are products over coordinates, so the ratio tensorizes and
        // the sweep max is the d-th power of the 1D max
        const std::vector<double> sweep = one_dim_ratio_sweep(spec, sweep_limit, k_box.limit());
        std::size_t best = 0;
        for (std::size_t i = 1; i < sweep.size(); ++i)
            if (sweep[i] > sweep[best]) best = i;
        est.value = std::pow(sweep[best], spec.d);
        est.attained_at = MultiIndex(std::vector<std::int64_t>(
            static_cast<std::size_t>(spec.d), static_cast<std::int64_t>(best) - sweep_limit));
        return est;
    }

    const FrequencyBox sweep_box = FrequencyBox::tensor(spec.d, sweep_limit);
    est.value = -1.0;
    est.attained_at = MultiIndex::zeros(spec.d);
    sweep_box.for_each([&](const MultiIndex& n) {
        const double ratio = quasi_algebra_ratio(spec, n, k_box);
        if (ratio > est.value) {
            est.value = ratio;
            est.attained_at = n;
        }
    });
    return est;
}

TrigPolynomial random_unit_ball_sample(const ClassSpec& spec, const FrequencyBox& box,
                                       std::uint64_t seed, bool real_valued) {
    if (box.dim() != spec.d)
        throw std::invalid_argument("random_unit_ball_sample: box dimension mismatch");
    const std::vector<MultiIndex> pts = box.points();
    if (pts.empty()) throw std::invalid_argument("random_unit_ball_sample: empty box");

    Rng rng(seed);
    TrigPolynomial profile(spec.d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const MultiIndex& k : pts) {
        if (real_valued) {
            if (k.is_zero()) {
                profile.set_coeff(k, Complex{rng.normal(), 0.0});
            } else if (k.is_positive_representative()) {
                const Complex v{rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2};
                profile.set_coeff(k, v);
                profile.set_coeff(-k, std::conj(v));
            }
        } else {
            profile.set_coeff(k, Complex{rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2});
        }
    }

    double scale;
    if (spec.kind == ClassSpec::Kind::SobolevMixed) {
        scale = std::sqrt(l2_norm_sq(profile));
    } else {
        scale = 0.0;
        for (const auto& [k, v] : profile.coeffs()) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) {
        profile.set_coeff(MultiIndex::zeros(spec.d), Complex{1.0, 0.0});
        scale = 1.0;
    }

    TrigPolynomial f(spec.d);
    for (const auto& [k, v] : profile.coeffs())
        f.set_coeff(k, v / scale * kernel_coefficient(spec, k));
    return f;
}

}  // namespace sampdisc
