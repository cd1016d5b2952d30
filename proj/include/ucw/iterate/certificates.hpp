#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>

#include "ucw/core/error.hpp"
#include "ucw/core/outward.hpp"

namespace ucw {

/// theta with sum_{i <= theta(n)} lambda_i (1 - lambda_i) >= n.
class DivergenceRate {
public:
    using Fn = std::function<Index(Index)>;
    DivergenceRate(Fn fn, std::string name) : fn_(std::move(fn)), name_(std::move(name)) {}
    Index operator()(Index n) const { return fn_(n); }
    const std::string& describe() const noexcept { return name_; }

private:
    Fn fn_;
    std::string name_;
};

/// gamma with |a_{gamma(eps)+m} - a_{gamma(eps)}| < eps for all m.
class CauchyModulus {
public:
    using Fn = std::function<Index(double)>;
    CauchyModulus(Fn fn, std::string name) : fn_(std::move(fn)), name_(std::move(name)) {}
    Index operator()(double eps) const {
        if (!(eps > 0.0)) throw InputError("Cauchy modulus queried at eps <= 0");
        return fn_(eps);
    }
    const std::string& describe() const noexcept { return name_; }

private:
    Fn fn_;
    std::string name_;
};

/// theta(n) = ceil(n / q) with q = lambda(1-lambda) rounded down.
inline DivergenceRate theta_const(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("theta_const: lambda must lie in (0,1)");
    const double q = outward::mul(lambda, outward::add(1.0, -lambda, -1), -1);
    std::ostringstream os;
    os << "ceil(n/" << q << ")";
    return DivergenceRate([q](Index n) { return ceil_index(outward::div(static_cast<double>(n), q, 1)); }, os.str());
}

/// theta(n) = ceil(n / q_min) for any schedule with lambda_i (1 - lambda_i) >= q_min.
inline DivergenceRate theta_lower(double q_min) {
    if (!(q_min > 0.0)) throw InputError("theta_lower: q_min must be positive");
    std::ostringstream os;
    os << "ceil(n/" << q_min << ")";
    return DivergenceRate([q_min](Index n) { return ceil_index(outward::div(static_cast<double>(n), q_min, 1)); },
                          os.str());
}

/// theta(n) = factor * n, e.g. a user-supplied certificate.
inline DivergenceRate theta_linear(Index factor) {
    return DivergenceRate([factor](Index n) { return factor * n; }, std::to_string(factor) + "n");
}

/// gamma(eps) = delta(eps / (1 - lambda)) for constant lambda.
inline CauchyModulus gamma_from_delta(CauchyModulus delta, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("gamma_from_delta: lambda must lie in (0,1)");
    const double one_minus = outward::add(1.0, -lambda, 1);
    std::string name = delta.describe() + "(eps/" + std::to_string(one_minus) + ")";
    return CauchyModulus([delta = std::move(delta), one_minus](double eps) {
        // the argument may only shrink under rounding; delta is nonincreasing
        return delta(outward::div(eps, one_minus, -1));
    }, name);
}

inline CauchyModulus zero_modulus() {
    return CauchyModulus([](double) -> Index { return 0; }, "0");
}

inline CauchyModulus constant_cauchy(Index value) {
    return CauchyModulus([value](double) { return value; }, std::to_string(value));
}

} // namespace ucw
