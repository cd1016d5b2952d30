#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "ucw/spaces/hyperbolic.hpp"
#include "ucw/spaces/rtree.hpp"
#include "ucw/spaces/space.hpp"
#include "ucw/spaces/vector_spaces.hpp"

namespace ucw {

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
double golden_section(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double best = 0.5 * (a + b);
    double fbest = f(best);
    for (double cand : {lo, hi}) {
        const double fv = f(cand);
        if (fv < fbest) {
            fbest = fv;
            best = cand;
        }
    }
    return best;
}

/// Geodesic parameter t in [0,1] of the point of [a, b] nearest to x.
template <GeodesicSpace S>
double nearest_parameter_on_segment(const S& space, const typename S::point_type& a,
                                    const typename S::point_type& b, const typename S::point_type& x) {
    const double len = space.dist(a, b);
    if (len == 0.0) return 0.0;
    if constexpr (std::is_same_v<S, EuclideanSpace>) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num += (x[i] - a[i]) * (b[i] - a[i]);
            den += (b[i] - a[i]) * (b[i] - a[i]);
        }
        return std::clamp(num / den, 0.0, 1.0);
    } else if constexpr (std::is_same_v<S, StarTree>) {
        // The gate point lies among: endpoints, the origin if on the segment, or
        // the radial match on x's ray.
        auto param_of = [&](const TreePoint& q) { return space.dist(a, q) / len; };
        double best_t = 0.0, best_d = space.dist(a, x);
        auto consider = [&](const TreePoint& q) {
            if (std::fabs(space.dist(a, q) + space.dist(q, b) - len) > 1e-12 * std::max(1.0, len)) return;
            const double d = space.dist(q, x);
            if (d < best_d) {
                best_d = d;
                best_t = std::clamp(param_of(q), 0.0, 1.0);
            }
        };
        consider(b);
        consider(TreePoint{0, 0.0});
        consider(x);
        consider(TreePoint{x.ray, std::min(x.r, std::max(a.ray == x.ray ? a.r : 0.0, b.ray == x.ray ? b.r : 0.0))});
        return best_t;
    } else {
        auto f = [&](double t) { return space.dist(x, space.combine(a, b, t)); };
        return golden_section(f, 0.0, 1.0, 1e-13);
    }
}

} // namespace ucw
