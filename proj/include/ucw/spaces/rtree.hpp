#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ucw/spaces/space.hpp"

namespace ucw {

/// Point of a star tree: radial coordinate `r` along ray `ray`. Every (i, 0)
/// denotes the shared origin.
struct TreePoint {
    int ray = 0;
    double r = 0.0;

    bool at_origin() const noexcept { return r == 0.0; }
};

/// Star-shaped R-tree: `rays` copies of [0, inf) glued at 0. Paths between
/// distinct rays pass through the origin.
class StarTree {
public:
    using point_type = TreePoint;

    explicit StarTree(int rays, Tolerance tol = {}) : rays_(rays), tol_(tol) {
        if (rays < 1) throw InputError("star tree needs at least one ray");
    }

    int rays() const noexcept { return rays_; }
    Tolerance tolerance() const noexcept { return tol_; }
    std::string describe() const { return "rtree(rays=" + std::to_string(rays_) + ")"; }

    TreePoint origin() const noexcept { return {0, 0.0}; }

    void validate(const TreePoint& p) const {
        if (p.ray < 0 || p.ray >= rays_) throw InputError("tree point ray index out of range");
        if (!(p.r >= 0.0) || !std::isfinite(p.r)) throw InputError("tree point radial coordinate must be finite and >= 0");
    }

    bool on_same_ray(const TreePoint& a, const TreePoint& b) const noexcept {
        return a.ray == b.ray || a.at_origin() || b.at_origin();
    }

    double dist(const TreePoint& a, const TreePoint& b) const {
        validate(a);
        validate(b);
        if (on_same_ray(a, b)) return std::fabs(a.r - b.r);
        return a.r + b.r;
    }

    TreePoint combine(const TreePoint& a, const TreePoint& b, double t) const {
        check_fraction(t, "combine");
        validate(a);
        validate(b);
        if (t == 0.0 || same_exact(a, b)) return a;
        if (t == 1.0) return b;
        if (on_same_ray(a, b)) {
            const int ray = a.at_origin() ? b.ray : a.ray;
            return {ray, std::max(0.0, (1.0 - t) * a.r + t * b.r)};
        }
        // Walk the through-origin geodesic by arclength.
        const double walk = t * (a.r + b.r);
        if (walk <= a.r) return {a.ray, a.r - walk};
        return {b.ray, walk - a.r};
    }

    bool same(const TreePoint& a, const TreePoint& b) const { return dist(a, b) <= tol_.abs; }

    TreePoint random_point(Rng& rng, const TreePoint& center, double scale) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<int> pick(0, rays_ - 1);
        const double len = scale * u(rng);
        const int target = pick(rng);
        return walk(center, target, len);
    }

    std::vector<TreePoint> stencil(const TreePoint& p, double h, Rng&) const {
        std::vector<TreePoint> out;
        if (!p.at_origin()) out.push_back({p.ray, std::max(0.0, p.r - h)});
        for (int j = 0; j < rays_; ++j) out.push_back(walk(p, j, h));
        return out;
    }

    /// Move distance `len` from p heading outward along `ray` (through the origin if needed).
    TreePoint walk(const TreePoint& p, int ray, double len) const {
        if (p.at_origin() || p.ray == ray) return {ray, p.r + len};
        if (len <= p.r) return {p.ray, p.r - len};
        return {ray, len - p.r};
    }

private:
    static bool same_exact(const TreePoint& a, const TreePoint& b) noexcept {
        return a.r == b.r && (a.ray == b.ray || a.r == 0.0);
    }

    int rays_;
    Tolerance tol_;
};

} // namespace ucw
