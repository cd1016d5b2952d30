#pragma once

#include <concepts>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "ucw/core/error.hpp"
#include "ucw/core/tolerance.hpp"

namespace ucw {

using Rng = std::mt19937_64;

/// A metric space with a convexity mapping W(x, y, t) = (1-t)x (+) t y.
///
/// Besides `dist` and `combine`, every concrete space supplies:
///  - `random_point(rng, center, scale)`: a point at distance <= scale from center;
///  - `stencil(x, h, rng)`: points at distance h from x in several directions,
///    used by the derivative-free optimizers in `analysis`;
///  - `validate(x)`: throws InputError for a malformed representation;
///  - `same(x, y)`: representation-aware equality (R-tree origins, for instance).
template <class S>
concept GeodesicSpace = std::copy_constructible<S> &&
    requires(const S& s, const typename S::point_type& x, double t, Rng& rng) {
        typename S::point_type;
        { s.dist(x, x) } -> std::convertible_to<double>;
        { s.combine(x, x, t) } -> std::same_as<typename S::point_type>;
        { s.origin() } -> std::same_as<typename S::point_type>;
        { s.random_point(rng, x, t) } -> std::same_as<typename S::point_type>;
        { s.stencil(x, t, rng) } -> std::same_as<std::vector<typename S::point_type>>;
        { s.validate(x) };
        { s.same(x, x) } -> std::same_as<bool>;
        { s.tolerance() } -> std::same_as<Tolerance>;
        { s.describe() } -> std::same_as<std::string>;
    };

/// Spaces whose points are coordinate vectors and whose W is the affine
/// combination; enables half-spaces and slabs as convex sets.
template <class S>
concept LinearSpace = GeodesicSpace<S> && requires(const S& s, const std::vector<double>& v) {
    { S::is_linear } -> std::convertible_to<bool>;
    { s.dual_norm(v) } -> std::convertible_to<double>;
    { s.dimension() } -> std::convertible_to<std::size_t>;
} && S::is_linear;

inline void check_fraction(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0))
        throw InputError(std::string(what) + ": combination parameter outside [0,1]");
}

/// k equally spaced points along the geodesic from x to y, endpoints included.
template <GeodesicSpace S>
std::vector<typename S::point_type> geodesic_sample(const S& space, const typename S::point_type& x,
                                                    const typename S::point_type& y, std::size_t k) {
    if (k < 2) throw InputError("geodesic_sample: need at least two points");
    std::vector<typename S::point_type> out;
    out.reserve(k);
    out.push_back(x);
    for (std::size_t i = 1; i + 1 < k; ++i)
        out.push_back(space.combine(x, y, static_cast<double>(i) / static_cast<double>(k - 1)));
    out.push_back(y);
    return out;
}

} // namespace ucw
