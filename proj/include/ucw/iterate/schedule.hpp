#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/iterate/certificates.hpp"

namespace ucw {

/// lambda_n families.
struct LambdaFamily {
    enum class Kind { constant, alternating };
    Kind kind = Kind::constant;
    double a = 0.5;  ///< constant value, or the value at even n
    double b = 0.5;  ///< value at odd n

    double at(Index n) const { return kind == Kind::constant || n % 2 == 0 ? a : b; }
};

/// s_n families.
struct SFamily {
    enum class Kind { zero, constant, geometric, inverse_square };
    Kind kind = Kind::zero;
    double c = 0.0;  ///< constant value / leading coefficient
    double q = 0.5;  ///< ratio for geometric

    double at(Index n) const {
        switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::constant: return c;
        case Kind::geometric: return c * std::pow(q, static_cast<double>(n));
        case Kind::inverse_square: {
            const double m = static_cast<double>(n) + 2.0;
            return c / (m * m);
        }
        }
        return 0.0;
    }
};

struct CertificateCheck {
    bool ok = true;
    std::string message;
};

/// The sequences (lambda_n), (s_n) together with the certificates the rate
/// theorems need: theta for sum lambda_n(1-lambda_n), gamma for
/// sum s_n(1-lambda_n), delta for sum s_n, and L, N0 with s_n <= 1 - 1/L for
/// n >= N0. Values are closed forms in n, so every consumer sees identical
/// lambda_n, s_n.
class ScalarSchedule {
public:
    ScalarSchedule(LambdaFamily lambda, SFamily s) : lambda_(lambda), s_(s) {
        check_family();
        derive();
    }

    static ScalarSchedule constant(double lambda, SFamily s = {}) {
        return ScalarSchedule({LambdaFamily::Kind::constant, lambda, lambda}, s);
    }
    static ScalarSchedule alternating(double even = 0.75, double odd = 0.25, SFamily s = {}) {
        return ScalarSchedule({LambdaFamily::Kind::alternating, even, odd}, s);
    }
    static SFamily s_zero() { return {SFamily::Kind::zero, 0.0, 0.5}; }
    static SFamily s_constant(double c) { return {SFamily::Kind::constant, c, 0.5}; }
    static SFamily s_geometric(double c, double q) { return {SFamily::Kind::geometric, c, q}; }
    static SFamily s_inverse_square(double c = 1.0) { return {SFamily::Kind::inverse_square, c, 0.5}; }

    double lambda_at(Index n) const { return lambda_.at(n); }
    double s_at(Index n) const { return s_.at(n); }

    const LambdaFamily& lambda_family() const noexcept { return lambda_; }
    const SFamily& s_family() const noexcept { return s_; }
    bool s_is_zero() const noexcept { return s_.kind == SFamily::Kind::zero || s_.c == 0.0; }
    std::optional<double> constant_lambda() const {
        if (lambda_.kind == LambdaFamily::Kind::constant || lambda_.a == lambda_.b) return lambda_.a;
        return std::nullopt;
    }

    const std::optional<DivergenceRate>& theta() const noexcept { return theta_; }
    const std::optional<CauchyModulus>& gamma() const noexcept { return gamma_; }
    const std::optional<CauchyModulus>& delta() const noexcept { return delta_; }
    const std::optional<Index>& L() const noexcept { return L_; }
    Index N0() const noexcept { return N0_; }

    void set_theta(DivergenceRate t) { theta_ = std::move(t); }
    void set_gamma(CauchyModulus g) { gamma_ = std::move(g); }
    void set_delta(CauchyModulus d) { delta_ = std::move(d); }
    void set_L(Index L, Index N0) {
        if (L < 1) throw InputError("L must be >= 1");
        L_ = L;
        N0_ = N0;
    }

    std::string describe() const {
        std::ostringstream os;
        if (lambda_.kind == LambdaFamily::Kind::constant) os << "lambda=" << lambda_.a;
        else os << "lambda=alt(" << lambda_.a << "," << lambda_.b << ")";
        switch (s_.kind) {
        case SFamily::Kind::zero: os << ";s=0"; break;
        case SFamily::Kind::constant: os << ";s=" << s_.c; break;
        case SFamily::Kind::geometric: os << ";s=" << s_.c << "*" << s_.q << "^n"; break;
        case SFamily::Kind::inverse_square: os << ";s=" << s_.c << "/(n+2)^2"; break;
        }
        return os.str();
    }

    /// alpha_n = sum_{i<=n} s_i (1 - lambda_i).
    double alpha(Index n) const {
        double acc = 0.0;
        for (Index i = 0; i <= n; ++i) acc += s_at(i) * (1.0 - lambda_at(i));
        return acc;
    }

    /// sum_{i <= theta(n)} lambda_i(1-lambda_i) >= n for n = 0..n_max.
    CertificateCheck validate_theta(Index n_max) const {
        if (!theta_) return {false, "no divergence rate theta for sum lambda_n(1-lambda_n)"};
        std::vector<double> prefix;  // prefix[i] = sum_{j<=i}
        auto sum_to = [&](Index k) {
            while (prefix.size() <= k) {
                const Index i = prefix.size();
                const double l = lambda_at(i);
                prefix.push_back((prefix.empty() ? 0.0 : prefix.back()) + l * (1.0 - l));
            }
            return prefix[k];
        };
        for (Index n = 0; n <= n_max; ++n) {
            const Index t = (*theta_)(n);
            if (t > 100'000'000) return {false, "divergence rate theta too large to validate at n=" + std::to_string(n)};
            const double v = sum_to(t);
            if (v < static_cast<double>(n) * (1.0 - 1e-12)) {
                std::ostringstream os;
                os << "sum lambda_n(1-lambda_n) divergence certificate failed at n=" << n << " (theta(n)=" << t
                   << ", partial sum " << v << ")";
                return {false, os.str()};
            }
        }
        return {};
    }

    /// |alpha_{gamma(eps)+m} - alpha_{gamma(eps)}| <= eps for m up to horizon.
    /// The finite sums checked here are strictly below the series tails the
    /// built-in moduli are derived from, so <= in floating point is the right test.
    CertificateCheck validate_gamma(const std::vector<double>& eps_list, Index horizon) const {
        if (!gamma_) return {false, "no Cauchy modulus gamma for sum s_n(1-lambda_n)"};
        return validate_cauchy(*gamma_, eps_list, horizon, true, "gamma");
    }

    /// Same check for delta against sum s_n.
    CertificateCheck validate_delta(const std::vector<double>& eps_list, Index horizon) const {
        if (!delta_) return {false, "no Cauchy modulus delta for sum s_n"};
        return validate_cauchy(*delta_, eps_list, horizon, false, "delta");
    }

    /// s_n <= 1 - 1/L for N0 <= n <= horizon.
    CertificateCheck validate_L(Index horizon) const {
        if (!L_) return {false, "no bound L with s_n <= 1 - 1/L"};
        const double cap = 1.0 - 1.0 / static_cast<double>(*L_);
        for (Index n = N0_; n <= horizon; ++n) {
            if (s_at(n) > cap) {
                std::ostringstream os;
                os << "s_n <= 1 - 1/L failed at n=" << n << " (s_n=" << s_at(n) << ", L=" << *L_ << ")";
                return {false, os.str()};
            }
            if (n >= N0_ + 100000) break;  // every built-in s family is nonincreasing in n
        }
        return {};
    }

private:
    void check_family() const {
        for (double v : {lambda_.a, lambda_.b})
            if (!(v >= 0.0 && v <= 1.0)) throw InputError("lambda_n must lie in [0,1]");
        if (!(s_.c >= 0.0 && s_.c <= 1.0) && s_.kind != SFamily::Kind::zero)
            throw InputError("s_n coefficient must lie in [0,1]");
        if (s_.kind == SFamily::Kind::geometric && !(s_.q >= 0.0 && s_.q < 1.0))
            throw InputError("geometric s_n ratio must lie in [0,1)");
    }

    void derive() {
        // theta
        const double qa = lambda_.a * (1.0 - lambda_.a);
        const double qb = lambda_.b * (1.0 - lambda_.b);
        if (auto c = constant_lambda(); c && *c > 0.0 && *c < 1.0) theta_ = theta_const(*c);
        else if (qa > 0.0 && qb > 0.0)
            theta_ = theta_lower(std::min(outward::mul(lambda_.a, outward::add(1.0, -lambda_.a, -1), -1),
                                          outward::mul(lambda_.b, outward::add(1.0, -lambda_.b, -1), -1)));

        // delta for sum s_n
        switch (s_.kind) {
        case SFamily::Kind::zero: delta_ = zero_modulus(); break;
        case SFamily::Kind::constant:
            if (s_.c == 0.0) delta_ = zero_modulus();
            break;
        case SFamily::Kind::geometric: {
            const double c = s_.c, q = s_.q;
            if (c == 0.0 || q == 0.0) {
                delta_ = zero_modulus();
                break;
            }
            // tail after index k: c q^{k+1} / (1 - q); smallest k with tail <= eps
            auto tail = [c, q](Index k) { return c * std::pow(q, static_cast<double>(k) + 1.0) / (1.0 - q); };
            delta_ = CauchyModulus(
                [tail, c, q](double eps) -> Index {
                    double guess = std::log(eps * (1.0 - q) / c) / std::log(q) - 1.0;
                    Index k = guess > 0.0 ? ceil_index(guess) : 0;
                    while (tail(k) > eps) ++k;
                    while (k > 0 && tail(k - 1) <= eps) --k;
                    return k;
                },
                "geometric_tail");
            break;
        }
        case SFamily::Kind::inverse_square: {
            const double c = s_.c;
            // sum_{i>k} c/(i+2)^2 < c/(k+2)
            delta_ = CauchyModulus(
                [c](double eps) -> Index {
                    const Index m = ceil_index(outward::div(c, eps, 1));
                    return m > 2 ? m - 2 : 0;
                },
                "inverse_square_tail");
            break;
        }
        }
        // gamma for sum s_n(1 - lambda_n); (1 - lambda_n) <= 1 so delta is one
        if (delta_) {
            if (auto c = constant_lambda(); c && *c > 0.0 && *c < 1.0) gamma_ = gamma_from_delta(*delta_, *c);
            else gamma_ = *delta_;
        }

        // L with N0 = 0: the largest s_n is at n = 0 for every family
        const double smax = s_.kind == SFamily::Kind::zero ? 0.0 : s_.at(0);
        if (smax < 1.0) {
            L_ = smax == 0.0 ? 1 : ceil_index(outward::div(1.0, outward::add(1.0, -smax, -1), 1));
            N0_ = 0;
        }
    }

    CertificateCheck validate_cauchy(const CauchyModulus& mod, const std::vector<double>& eps_list, Index horizon,
                                     bool weighted, const char* name) const {
        for (double eps : eps_list) {
            const Index g = mod(eps);
            double acc = 0.0;
            for (Index m = 1; m <= horizon; ++m) {
                const Index i = g + m;
                acc += s_at(i) * (weighted ? 1.0 - lambda_at(i) : 1.0);
                if (acc > eps) {
                    std::ostringstream os;
                    os << "Cauchy modulus " << name << " failed at eps=" << eps << ", m=" << m << " (" << name
                       << "(eps)=" << g << ")";
                    return {false, os.str()};
                }
            }
        }
        return {};
    }

    LambdaFamily lambda_;
    SFamily s_;
    std::optional<DivergenceRate> theta_;
    std::optional<CauchyModulus> gamma_;
    std::optional<CauchyModulus> delta_;
    std::optional<Index> L_;
    Index N0_ = 0;
};

} // namespace ucw
