#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/spaces/space.hpp"

namespace ucw {

using Vec = std::vector<double>;

namespace detail {

inline void check_dim(const Vec& x, std::size_t dim, const char* who) {
    if (x.size() != dim) {
        std::ostringstream os;
        os << who << ": point has dimension " << x.size() << ", space has " << dim;
        throw InputError(os.str());
    }
}

inline Vec affine(const Vec& x, const Vec& y, double t) {
    if (t == 0.0 || x == y) return x;
    if (t == 1.0) return y;
    Vec out(x.size());
    const double s = 1.0 - t;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i] + t * y[i];
    return out;
}

inline double pnorm(const Vec& v, double p) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (double c : v) acc += std::pow(std::fabs(c) / m, p);
    return m * std::pow(acc, 1.0 / p);
}

inline Vec gaussian_direction(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(dim);
    do {
        for (auto& c : v) c = g(rng);
    } while (std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; }));
    return v;
}

/// Shared machinery for finite-dimensional normed spaces with W(x,y,t) = (1-t)x + ty.
template <class Derived>
class NormedSpaceBase {
public:
    using point_type = Vec;
    static constexpr bool is_linear = true;

    std::size_t dimension() const noexcept { return dim_; }
    Tolerance tolerance() const noexcept { return tol_; }

    double dist(const Vec& x, const Vec& y) const {
        check_dim(x, dim_, "dist");
        check_dim(y, dim_, "dist");
        Vec d(dim_);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = x[i] - y[i];
        return self().norm(d);
    }

    Vec combine(const Vec& x, const Vec& y, double t) const {
        check_fraction(t, "combine");
        check_dim(x, dim_, "combine");
        check_dim(y, dim_, "combine");
        return affine(x, y, t);
    }

    Vec origin() const { return Vec(dim_, 0.0); }

    void validate(const Vec& x) const {
        check_dim(x, dim_, "validate");
        for (double c : x)
            if (!std::isfinite(c)) throw InputError("validate: non-finite coordinate");
    }

    bool same(const Vec& x, const Vec& y) const { return dist(x, y) <= tol_.abs; }

    Vec random_point(Rng& rng, const Vec& center, double scale) const {
        Vec dir = gaussian_direction(rng, dim_);
        const double n = self().norm(dir);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double rho = scale * std::pow(u(rng), 1.0 / static_cast<double>(dim_));
        Vec out(center);
        for (std::size_t i = 0; i < dim_; ++i) out[i] += rho * dir[i] / n;
        return out;
    }

    std::vector<Vec> stencil(const Vec& x, double h, Rng& rng) const {
        std::vector<Vec> out;
        out.reserve(4 * dim_ + 4);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vec p(x);
                p[i] += sgn * h;
                out.push_back(std::move(p));
            }
        }
        for (std::size_t k = 0; k < 2 * dim_ + 4; ++k) {
            Vec dir = gaussian_direction(rng, dim_);
            const double n = self().norm(dir);
            Vec p(x);
            for (std::size_t i = 0; i < dim_; ++i) p[i] += h * dir[i] / n;
            out.push_back(std::move(p));
        }
        return out;
    }

protected:
    NormedSpaceBase(std::size_t dim, Tolerance tol) : dim_(dim), tol_(tol) {
        if (dim == 0) throw InputError("vector space dimension must be positive");
    }

    std::size_t dim_;
    Tolerance tol_;

private:
    const Derived& self() const { return static_cast<const Derived&>(*this); }
};

} // namespace detail

/// Euclidean n-space.
class EuclideanSpace : public detail::NormedSpaceBase<EuclideanSpace> {
public:
    explicit EuclideanSpace(std::size_t dim, Tolerance tol = {}) : NormedSpaceBase(dim, tol) {}

    double norm(const Vec& v) const {
        double m = 0.0;
        for (double c : v) m = std::max(m, std::fabs(c));
        if (m == 0.0) return 0.0;
        double acc = 0.0;
        for (double c : v) acc += (c / m) * (c / m);
        return m * std::sqrt(acc);
    }
    double dual_norm(const Vec& v) const { return norm(v); }

    std::string describe() const { return "euclidean(dim=" + std::to_string(dim_) + ")"; }
};

/// Finite-dimensional l_p with p >= 2.
class LpSpace : public detail::NormedSpaceBase<LpSpace> {
public:
    LpSpace(std::size_t dim, double p, Tolerance tol = {}) : NormedSpaceBase(dim, tol), p_(p) {
        if (!(p >= 2.0) || !std::isfinite(p)) throw InputError("lp space requires finite p >= 2");
    }

    double p() const noexcept { return p_; }
    double norm(const Vec& v) const { return detail::pnorm(v, p_); }
    double dual_norm(const Vec& v) const { return detail::pnorm(v, p_ / (p_ - 1.0)); }

    std::string describe() const {
        std::ostringstream os;
        os << "lp(p=" << p_ << ",dim=" << dim_ << ")";
        return os.str();
    }

private:
    double p_;
};

} // namespace ucw
