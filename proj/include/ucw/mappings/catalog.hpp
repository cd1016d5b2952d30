#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "ucw/analysis/projection.hpp"
#include "ucw/mappings/map.hpp"

namespace ucw {

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace detail

template <GeodesicSpace S>
NonexpansiveMap<S> identity_map(ConvexSet<S> domain) {
    auto fixed = chebyshev_projection(domain, domain.space().origin());
    return NonexpansiveMap<S>(std::move(domain), [](const typename S::point_type& x) { return x; }, "identity",
                              std::move(fixed));
}

/// T_lambda(x) = (1-lambda) x (+) lambda T x. Same fixed points as T.
template <GeodesicSpace S>
NonexpansiveMap<S> averaged(const NonexpansiveMap<S>& inner, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InputError("averaged: lambda must lie in (0,1]");
    const S space = inner.space();
    return NonexpansiveMap<S>(
        inner.domain(), [space, inner, lambda](const auto& x) { return space.combine(x, inner(x), lambda); },
        "averaged(" + inner.kind() + "," + detail::fmt(lambda) + ")", inner.known_fixed_point());
}

/// compose({A, B, C})(x) = A(B(C(x))). The domain is that of the innermost map;
/// a component's known fixed point is kept when the composite fixes it too.
template <GeodesicSpace S>
NonexpansiveMap<S> compose(std::vector<NonexpansiveMap<S>> maps) {
    if (maps.empty()) throw InputError("compose: need at least one map");
    std::string kind = "compose(";
    for (std::size_t i = 0; i < maps.size(); ++i) kind += (i ? "," : "") + maps[i].kind();
    kind += ")";
    auto fn = [maps](const typename S::point_type& x) {
        auto y = x;
        for (auto it = maps.rbegin(); it != maps.rend(); ++it) y = (*it)(y);
        return y;
    };
    const S& space = maps.back().space();
    std::optional<typename S::point_type> fixed;
    for (const auto& m : maps) {
        if (m.known_fixed_point() && space.same(fn(*m.known_fixed_point()), *m.known_fixed_point())) {
            fixed = m.known_fixed_point();
            break;
        }
    }
    return NonexpansiveMap<S>(maps.back().domain(), fn, kind, fixed);
}

/// Nearest-point projection onto `target`, as a self-map of the whole space.
/// Nonexpansive in CAT(0) spaces and for coordinate-aligned sets in l_p; other
/// l_p targets should be checked with check_nonexpansive.
template <GeodesicSpace S>
NonexpansiveMap<S> projection_map(const ConvexSet<S>& target) {
    auto fixed = chebyshev_projection(target, target.space().origin());
    return NonexpansiveMap<S>(
        ConvexSet<S>::whole(target.space()), [target](const auto& x) { return chebyshev_projection(target, x); },
        "projection(" + target.describe() + ")", std::move(fixed));
}

/// Rotation by `angle` about `center`: in the (x0, x1) coordinate plane for
/// Euclidean spaces, or the hyperbolic rotation about a point of H^2.
/// On the Euclidean line only angles congruent to 0 or pi are rotations.
template <GeodesicSpace S>
NonexpansiveMap<S> rotation_map(const S& space, typename S::point_type center, double angle) {
    space.validate(center);
    if (!std::isfinite(angle)) throw InputError("rotation_map: angle must be finite");
    const std::string kind = "rotation(" + detail::fmt(angle) + ")";
    const double c = std::cos(angle), s = std::sin(angle);
    if constexpr (std::is_same_v<S, EuclideanSpace>) {
        if (space.dimension() == 1) {
            const double turns = std::remainder(angle, 2.0 * std::numbers::pi);
            const bool id = std::fabs(turns) < 1e-12;
            const bool flip = std::fabs(std::fabs(turns) - std::numbers::pi) < 1e-12;
            if (!id && !flip) throw InputError("rotation_map: on the line only angles 0 and pi are isometries");
            return NonexpansiveMap<S>(
                ConvexSet<S>::whole(space),
                [center, flip](const Vec& x) { return flip ? Vec{2.0 * center[0] - x[0]} : x; }, kind, center);
        }
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space),
            [center, c, s](const Vec& x) {
                Vec out(x);
                const double u = x[0] - center[0], v = x[1] - center[1];
                out[0] = center[0] + c * u - s * v;
                out[1] = center[1] + s * u + c * v;
                return out;
            },
            kind, center);
    } else if constexpr (std::is_same_v<S, HyperbolicPlane>) {
        const Lorentz rot{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
        const Lorentz m = compose(HyperbolicPlane::boost_to(center), compose(rot, HyperbolicPlane::boost_from(center)));
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space), [m](const HyperboloidPoint& x) { return HyperbolicPlane::normalize(lorentz_apply(m, x)); },
            kind, center);
    } else {
        throw InputError("rotation_map: unsupported space " + space.describe());
    }
}

/// Geodesic symmetry about `center`: 2c - x in linear spaces, rotation by pi in H^2.
template <GeodesicSpace S>
NonexpansiveMap<S> point_reflection(const S& space, typename S::point_type center) {
    space.validate(center);
    if constexpr (std::is_same_v<S, HyperbolicPlane>) {
        auto m = rotation_map(space, center, std::numbers::pi);
        return NonexpansiveMap<S>(m.domain(), [m](const auto& x) { return m(x); }, "reflection", center);
    } else if constexpr (LinearSpace<S>) {
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space),
            [center](const Vec& x) {
                Vec out(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * center[i] - x[i];
                return out;
            },
            "reflection", center);
    } else {
        throw InputError("point_reflection: unsupported space " + space.describe());
    }
}

/// x -> x + v. Has no fixed point unless v = 0.
template <GeodesicSpace S>
NonexpansiveMap<S> translation_map(const S& space, Vec v) {
    if constexpr (LinearSpace<S>) {
        space.validate(v);
        std::optional<Vec> fixed;
        if (std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; })) fixed = space.origin();
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space),
            [v](const Vec& x) {
                Vec out(x);
                for (std::size_t i = 0; i < x.size(); ++i) out[i] += v[i];
                return out;
            },
            "translation", fixed);
    } else {
        throw InputError("translation_map: unsupported space " + space.describe());
    }
}

/// Geodesic homothety about `center`: x -> (1-f) c (+) f x. Nonexpansive for
/// f in [0,1] in every space; factors above 1 (linear spaces only) expand.
template <GeodesicSpace S>
NonexpansiveMap<S> scaling_map(const S& space, typename S::point_type center, double factor) {
    space.validate(center);
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw InputError("scaling_map: factor must be finite and >= 0");
    const std::string kind = "scaling(" + detail::fmt(factor) + ")";
    if (factor <= 1.0) {
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space), [space, center, factor](const auto& x) { return space.combine(center, x, factor); },
            kind, center);
    }
    if constexpr (LinearSpace<S>) {
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space),
            [center, factor](const Vec& x) {
                Vec out(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) out[i] = center[i] + factor * (x[i] - center[i]);
                return out;
            },
            kind, center);
    } else {
        throw InputError("scaling_map: factors above 1 need a linear space");
    }
}

/// (Px)_i = x_{perm[i]}; an isometry of every l_p.
template <GeodesicSpace S>
NonexpansiveMap<S> coordinate_permutation(const S& space, std::vector<std::size_t> perm) {
    if constexpr (LinearSpace<S>) {
        std::vector<std::size_t> sorted(perm);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i || sorted.size() != space.dimension())
                throw InputError("coordinate_permutation: not a permutation of the coordinates");
        return NonexpansiveMap<S>(
            ConvexSet<S>::whole(space),
            [perm](const Vec& x) {
                Vec out(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[perm[i]];
                return out;
            },
            "permutation", space.origin());
    } else {
        throw InputError("coordinate_permutation: unsupported space " + space.describe());
    }
}

/// (i, r) -> (perm[i], r) on a star tree; an isometry fixing the origin.
inline NonexpansiveMap<StarTree> ray_permutation(const StarTree& tree, std::vector<int> perm) {
    std::vector<int> sorted(perm);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) || sorted.size() != static_cast<std::size_t>(tree.rays()))
            throw InputError("ray_permutation: not a permutation of the rays");
    return NonexpansiveMap<StarTree>(
        ConvexSet<StarTree>::whole(tree),
        [perm](const TreePoint& p) { return p.at_origin() ? p : TreePoint{perm[static_cast<std::size_t>(p.ray)], p.r}; },
        "ray_permutation", tree.origin());
}

} // namespace ucw
