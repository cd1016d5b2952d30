#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/spaces/space.hpp"

namespace ucw {

/// Point of the hyperbolic plane in the hyperboloid model: <x,x>_M = -1, t > 0,
/// where <a,b>_M = a.x*b.x + a.y*b.y - a.t*b.t.
struct HyperboloidPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 1.0;

    friend bool operator==(const HyperboloidPoint&, const HyperboloidPoint&) = default;
};

inline double minkowski(const HyperboloidPoint& a, const HyperboloidPoint& b) noexcept {
    return a.x * b.x + a.y * b.y - a.t * b.t;
}

/// 3x3 Lorentz transformation acting on (x, y, t) column vectors.
using Lorentz = std::array<std::array<double, 3>, 3>;

inline HyperboloidPoint lorentz_apply(const Lorentz& m, const HyperboloidPoint& p) noexcept {
    return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.t, m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.t,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.t};
}

inline Lorentz compose(const Lorentz& a, const Lorentz& b) noexcept {
    Lorentz c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// The hyperbolic plane H^2 (curvature -1), a CAT(0) space.
class HyperbolicPlane {
public:
    using point_type = HyperboloidPoint;

    explicit HyperbolicPlane(Tolerance tol = {}) : tol_(tol) {}

    Tolerance tolerance() const noexcept { return tol_; }
    std::string describe() const { return "hyperbolic2"; }

    HyperboloidPoint origin() const noexcept { return {0.0, 0.0, 1.0}; }

    /// Sheet coordinates grow like e^r, so the Minkowski constraint can only
    /// be held to double precision for radii of a few units.
    static constexpr double max_sample_radius() noexcept { return 8.0; }

    /// Lift spatial coordinates onto the upper sheet.
    static HyperboloidPoint lift(double x, double y) noexcept {
        return {x, y, std::sqrt(1.0 + x * x + y * y)};
    }

    /// Point at hyperbolic distance r from the origin in direction phi.
    static HyperboloidPoint from_polar(double r, double phi) noexcept {
        return {std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi), std::cosh(r)};
    }

    /// Rescale onto the sheet. Used after every combine.
    static HyperboloidPoint normalize(HyperboloidPoint p) noexcept {
        const double q = -minkowski(p, p);
        if (q > 0.0) {
            const double s = 1.0 / std::sqrt(q);
            p.x *= s;
            p.y *= s;
            p.t *= s;
        }
        if (p.t < 0.0) p = {-p.x, -p.y, -p.t};
        return p;
    }

    void validate(const HyperboloidPoint& p) const {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.t))
            throw InputError("hyperbolic point has non-finite coordinates");
        if (!(p.t > 0.0)) throw InputError("hyperbolic point must lie on the upper sheet (t > 0)");
        const double drift = std::fabs(minkowski(p, p) + 1.0);
        if (drift > tol_.abs * std::max(1.0, p.t * p.t))
            throw InputError("hyperbolic point violates the Minkowski constraint");
    }

    double dist(const HyperboloidPoint& a, const HyperboloidPoint& b) const {
        if (!(a.t > 0.0) || !(b.t > 0.0)) throw InputError("dist: point off the upper sheet");
        const double cosh_d = -minkowski(a, b);
        if (cosh_d > 2.0) return std::acosh(cosh_d);
        // Chordal form is well conditioned for nearby points.
        const double dx = a.x - b.x, dy = a.y - b.y, dt = a.t - b.t;
        const double chord2 = dx * dx + dy * dy - dt * dt;
        if (chord2 <= 0.0) return 0.0;
        return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    }

    HyperboloidPoint combine(const HyperboloidPoint& a, const HyperboloidPoint& b, double t) const {
        check_fraction(t, "combine");
        if (t == 0.0 || a == b) return a;
        if (t == 1.0) return b;
        const double d = dist(a, b);
        if (d == 0.0) return a;
        // gamma(td) = cosh(td) a + sinh(td) u with u the unit tangent toward b, i.e.
        // sinh((1-t)d)/sinh(d) a + sinh(td)/sinh(d) b.
        double ca, cb;
        if (d < 1e-4) {
            // sinh(k d)/sinh(d) = k (1 + (k^2-1) d^2/6 + O(d^4))
            const double d2 = d * d;
            ca = (1.0 - t) * (1.0 + ((1.0 - t) * (1.0 - t) - 1.0) * d2 / 6.0);
            cb = t * (1.0 + (t * t - 1.0) * d2 / 6.0);
        } else {
            const double sd = std::sinh(d);
            ca = std::sinh((1.0 - t) * d) / sd;
            cb = std::sinh(t * d) / sd;
        }
        return normalize({ca * a.x + cb * b.x, ca * a.y + cb * b.y, ca * a.t + cb * b.t});
    }

    bool same(const HyperboloidPoint& a, const HyperboloidPoint& b) const { return dist(a, b) <= tol_.abs; }

    /// Lorentz boost carrying the origin to p.
    static Lorentz boost_to(const HyperboloidPoint& p) noexcept {
        const double v2 = p.x * p.x + p.y * p.y;
        Lorentz m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        if (v2 == 0.0) return m;
        const double k = (p.t - 1.0) / v2;
        m[0] = {1.0 + k * p.x * p.x, k * p.x * p.y, p.x};
        m[1] = {k * p.x * p.y, 1.0 + k * p.y * p.y, p.y};
        m[2] = {p.x, p.y, p.t};
        return m;
    }

    /// Inverse of boost_to(p).
    static Lorentz boost_from(const HyperboloidPoint& p) noexcept {
        return boost_to({-p.x, -p.y, p.t});
    }

    /// Exponential map at p along the unit direction at angle phi (in the boosted frame).
    static HyperboloidPoint exp_at(const HyperboloidPoint& p, double h, double phi) noexcept {
        return normalize(lorentz_apply(boost_to(p), from_polar(h, phi)));
    }

    HyperboloidPoint random_point(Rng& rng, const HyperboloidPoint& center, double scale) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double r = scale * std::sqrt(u(rng));
        const double phi = 2.0 * std::numbers::pi * u(rng);
        return exp_at(center, r, phi);
    }

    std::vector<HyperboloidPoint> stencil(const HyperboloidPoint& p, double h, Rng& rng) const {
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        const double offset = u(rng);
        const Lorentz b = boost_to(p);
        std::vector<HyperboloidPoint> out;
        out.reserve(12);
        for (int k = 0; k < 12; ++k)
            out.push_back(normalize(lorentz_apply(b, from_polar(h, offset + k * std::numbers::pi / 6.0))));
        return out;
    }

private:
    Tolerance tol_;
};

} // namespace ucw
