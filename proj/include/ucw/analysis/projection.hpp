#pragma once

#include <cmath>
#include <type_traits>
#include <variant>

#include "ucw/spaces/convex_set.hpp"
#include "ucw/spaces/segment.hpp"

namespace ucw {

/// Nearest point of a closed convex set. Closed convex sets of the supported
/// spaces are Chebyshev sets, so the result is unique.
///
/// Balls project along the geodesic from the center (the radial point attains
/// the triangle-inequality lower bound d(x,c) - r in any W-hyperbolic space);
/// segments use a 1-D search along the geodesic parameter; half-spaces in l_p
/// move along the dual direction sign(n_i)|n_i|^(q-1).
template <GeodesicSpace S>
typename S::point_type chebyshev_projection(const ConvexSet<S>& set, const typename S::point_type& x) {
    using P = typename S::point_type;
    const S& space = set.space();
    space.validate(x);
    return std::visit(
        [&](const auto& d) -> P {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, WholeSpace>) {
                return x;
            } else if constexpr (std::is_same_v<D, Ball<P>>) {
                const double dc = space.dist(d.center, x);
                if (dc <= d.radius) return x;
                return space.combine(d.center, x, d.radius / dc);
            } else if constexpr (std::is_same_v<D, Segment<P>>) {
                const double t = nearest_parameter_on_segment(space, d.a, d.b, x);
                return space.combine(d.a, d.b, t);
            } else {
                if constexpr (LinearSpace<S>) {
                    double v = 0.0;
                    for (std::size_t i = 0; i < x.size(); ++i) v += d.normal[i] * x[i];
                    double target = v;
                    if (v < d.lower) target = d.lower;
                    if (d.upper && v > *d.upper) target = *d.upper;
                    if (target == v) return x;
                    // direction w with <n, w> = ||n||_q^q; for p = 2 this is n itself
                    P w(x.size());
                    double nw = 0.0;
                    if constexpr (std::is_same_v<S, EuclideanSpace>) {
                        w = d.normal;
                    } else {
                        const double q = space.p() / (space.p() - 1.0);
                        for (std::size_t i = 0; i < x.size(); ++i)
                            w[i] = std::copysign(std::pow(std::fabs(d.normal[i]), q - 1.0), d.normal[i]);
                    }
                    for (std::size_t i = 0; i < x.size(); ++i) nw += d.normal[i] * w[i];
                    P out(x);
                    for (std::size_t i = 0; i < x.size(); ++i) out[i] += (target - v) / nw * w[i];
                    return out;
                } else {
                    throw InputError("half-space projection outside a linear space");
                }
            }
        },
        set.descriptor());
}

/// Distance from x to the set.
template <GeodesicSpace S>
double distance_to_set(const ConvexSet<S>& set, const typename S::point_type& x) {
    return set.space().dist(x, chebyshev_projection(set, x));
}

} // namespace ucw
