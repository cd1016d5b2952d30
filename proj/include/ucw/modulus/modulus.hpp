#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ucw/core/error.hpp"
#include "ucw/core/outward.hpp"

namespace ucw {

/// A modulus of uniform convexity eta(r, eps) with values in (0,1], optionally
/// carrying the factored form eta(r, eps) = eps * tilde(r, eps).
///
/// Every evaluator comes in two flavours: the plain value, and a guaranteed
/// lower bound used by certificate arithmetic. They coincide whenever the
/// value is computed exactly.
class Modulus {
public:
    using Fn = std::function<double(double, double)>;

    Modulus(std::string name, Fn eval, Fn eval_lower, bool monotone, Fn tilde = {}, Fn tilde_lower = {})
        : name_(std::move(name)),
          eval_(std::move(eval)),
          lower_(std::move(eval_lower)),
          tilde_(std::move(tilde)),
          tilde_lower_(std::move(tilde_lower)),
          monotone_(monotone) {
        if (!lower_) {
            // Unknown rounding behaviour: back off a few ulps.
            lower_ = [f = eval_](double r, double e) { return f(r, e) * (1.0 - 8.0 * std::numeric_limits<double>::epsilon()); };
        }
        if (tilde_ && !tilde_lower_) {
            tilde_lower_ = [f = tilde_](double r, double e) { return f(r, e) * (1.0 - 8.0 * std::numeric_limits<double>::epsilon()); };
        }
    }

    const std::string& describe() const noexcept { return name_; }
    bool monotone() const noexcept { return monotone_; }
    bool factored() const noexcept { return static_cast<bool>(tilde_); }

    double operator()(double r, double eps) const { return eval(r, eps); }

    double eval(double r, double eps) const {
        check_args(r, eps);
        return clamp(eval_(r, eps));
    }
    double eval_lower(double r, double eps) const {
        check_args(r, eps);
        return clamp(lower_(r, eps));
    }
    double eval(double r, double eps, Rounding mode) const {
        return mode == Rounding::outward ? eval_lower(r, eps) : eval(r, eps);
    }

    double tilde(double r, double eps) const {
        require_factored();
        check_args(r, eps);
        return positive(tilde_(r, eps));
    }
    double tilde_lower(double r, double eps) const {
        require_factored();
        check_args(r, eps);
        return positive(tilde_lower_(r, eps));
    }
    double tilde(double r, double eps, Rounding mode) const {
        return mode == Rounding::outward ? tilde_lower(r, eps) : tilde(r, eps);
    }

private:
    static void check_args(double r, double eps) {
        if (!(r > 0.0) || !std::isfinite(r)) throw ModulusError("modulus radius must be positive and finite");
        if (!(eps > 0.0 && eps <= 2.0)) {
            std::ostringstream os;
            os << "modulus epsilon " << eps << " outside (0,2]";
            throw ModulusError(os.str());
        }
    }
    static double clamp(double v) {
        if (!(v > 0.0)) throw ModulusError("modulus evaluated to a value outside (0,1]");
        return std::min(v, 1.0);
    }
    static double positive(double v) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ModulusError("factored modulus evaluated to a nonpositive value");
        return v;
    }
    void require_factored() const {
        if (!tilde_) throw ConfigError("modulus '" + name_ + "' has no factored form");
    }

    std::string name_;
    Fn eval_;
    Fn lower_;
    Fn tilde_;
    Fn tilde_lower_;
    bool monotone_;
};

/// eta(r, eps) = eps^2 / 8, valid for every CAT(0) space. Factored with tilde = eps / 8.
inline Modulus cat0_modulus() {
    return Modulus(
        "cat0", [](double, double e) { return e * e / 8.0; },
        [](double, double e) { return outward::mul(e, e, -1) / 8.0; }, true, [](double, double e) { return e / 8.0; },
        [](double, double e) { return e / 8.0; });
}

/// Clarkson-type modulus 1 - (1 - (eps/2)^p)^(1/p) for l_p, p >= 2; independent of r.
inline Modulus lp_modulus(double p) {
    if (!(p >= 2.0) || !std::isfinite(p)) throw InputError("lp_modulus: unsupported parameter p < 2");
    // -expm1(log1p(-u)/p) avoids the cancellation in 1 - (1-u)^(1/p) for small u.
    auto value = [p](double, double e) {
        const double u = std::pow(0.5 * e, p);
        if (u >= 1.0) return 1.0;
        return -std::expm1(std::log1p(-u) / p);
    };
    constexpr double slack = 1.0 - 16.0 * std::numeric_limits<double>::epsilon();
    std::ostringstream name;
    name << "lp(" << p << ")";
    return Modulus(
        name.str(), value, [value](double r, double e) { return value(r, e) * slack; }, true,
        [value](double r, double e) { return value(r, e) / e; },
        [value](double r, double e) { return outward::div(value(r, e) * slack, e, -1); });
}

/// Tabulated modulus on a (radius, eps) grid. A query is answered with the
/// grid value at the next radius up and the next eps down, which for a
/// modulus nonincreasing in r and nondecreasing in eps rounds delta down.
inline Modulus table_modulus(std::vector<double> radii, std::vector<double> eps_grid,
                             std::vector<std::vector<double>> values) {
    if (radii.empty() || eps_grid.empty()) throw InputError("table modulus needs a nonempty grid");
    if (!std::is_sorted(radii.begin(), radii.end()) || !std::is_sorted(eps_grid.begin(), eps_grid.end()))
        throw InputError("table modulus grid must be sorted ascending");
    if (values.size() != radii.size()) throw InputError("table modulus: one row per radius required");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != eps_grid.size()) throw InputError("table modulus: row length must match eps grid");
        for (std::size_t j = 0; j < eps_grid.size(); ++j) {
            const double v = values[i][j];
            if (!(v > 0.0 && v <= 1.0)) throw InputError("table modulus values must lie in (0,1]");
            if (j > 0 && v < values[i][j - 1]) throw InputError("table modulus must be nondecreasing in eps");
            if (i > 0 && v > values[i - 1][j]) throw InputError("table modulus must be nonincreasing in r");
        }
    }
    auto lookup = [radii = std::move(radii), eps_grid = std::move(eps_grid), values = std::move(values)](double r,
                                                                                                    double e) {
        const auto ri = std::lower_bound(radii.begin(), radii.end(), r);
        if (ri == radii.end()) throw ModulusError("table modulus queried beyond its largest radius");
        const auto ej = std::upper_bound(eps_grid.begin(), eps_grid.end(), e);
        if (ej == eps_grid.begin()) throw ModulusError("table modulus queried below its smallest eps");
        return values[static_cast<std::size_t>(ri - radii.begin())][static_cast<std::size_t>(ej - eps_grid.begin()) - 1];
    };
    return Modulus("table", lookup, lookup, true);
}

/// eta == value, regardless of arguments. Useful only for negative tests.
inline Modulus constant_modulus(double value) {
    std::ostringstream name;
    name << "constant(" << value << ")";
    return Modulus(name.str(), [value](double, double) { return value; }, [value](double, double) { return value; },
                   true);
}

/// (1 - 2 t (1-t) eta(r, eps)) r: the bound on d((1-t)x (+) t y, a).
inline double groetsch_bound(const Modulus& m, double r, double eps, double t) {
    if (!(r > 0.0)) throw InputError("groetsch_bound: r must be positive");
    if (!(eps > 0.0 && eps <= 2.0)) throw InputError("groetsch_bound: eps outside (0,2]");
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("groetsch_bound: combination parameter outside [0,1]");
    return (1.0 - 2.0 * t * (1.0 - t) * m.eval(r, eps)) * r;
}

} // namespace ucw
