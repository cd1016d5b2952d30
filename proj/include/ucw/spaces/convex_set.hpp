#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include "ucw/spaces/segment.hpp"
#include "ucw/spaces/space.hpp"
#include "ucw/spaces/vector_spaces.hpp"

namespace ucw {

struct WholeSpace {};

template <class P>
struct Ball {
    P center;
    double radius = 0.0;
};

/// Geodesic segment [a, b]. On a star tree this covers ray intervals.
template <class P>
struct Segment {
    P a;
    P b;
};

/// lower <= <normal, x> (<= upper when set). Linear spaces only.
struct HalfSpace {
    Vec normal;
    double lower = 0.0;
    std::optional<double> upper;
};

/// Closed convex subset of a geodesic space, carrying a copy of its space.
template <GeodesicSpace S>
class ConvexSet {
public:
    using point_type = typename S::point_type;
    using Descriptor = std::variant<WholeSpace, Ball<point_type>, Segment<point_type>, HalfSpace>;

    static ConvexSet whole(S space) { return ConvexSet(std::move(space), WholeSpace{}); }

    static ConvexSet ball(S space, point_type center, double radius) {
        space.validate(center);
        if (!(radius >= 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be finite and >= 0");
        return ConvexSet(std::move(space), Ball<point_type>{std::move(center), radius});
    }

    static ConvexSet segment(S space, point_type a, point_type b) {
        space.validate(a);
        space.validate(b);
        return ConvexSet(std::move(space), Segment<point_type>{std::move(a), std::move(b)});
    }

    static ConvexSet half_space(S space, Vec normal, double lower, std::optional<double> upper = std::nullopt) {
        if constexpr (!LinearSpace<S>) {
            throw InputError("half-spaces exist only in linear spaces");
        } else {
            if (normal.size() != space.dimension()) throw InputError("half-space normal has wrong dimension");
            if (space.dual_norm(normal) == 0.0) throw InputError("half-space normal must be nonzero");
            if (upper && *upper < lower) throw InputError("slab upper bound below lower bound");
            return ConvexSet(std::move(space), HalfSpace{std::move(normal), lower, upper});
        }
    }

    const S& space() const noexcept { return space_; }
    const Descriptor& descriptor() const noexcept { return desc_; }

    bool contains(const point_type& x) const {
        const double tol = space_.tolerance().abs;
        return std::visit(
            [&](const auto& d) -> bool {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, WholeSpace>) {
                    return true;
                } else if constexpr (std::is_same_v<D, Ball<point_type>>) {
                    return space_.dist(d.center, x) <= d.radius + tol;
                } else if constexpr (std::is_same_v<D, Segment<point_type>>) {
                    const double t = nearest_parameter_on_segment(space_, d.a, d.b, x);
                    return space_.dist(x, space_.combine(d.a, d.b, t)) <= tol;
                } else {
                    return half_space_excess(d, x) <= tol;
                }
            },
            desc_);
    }

    /// Distance below the half-space boundary (positive when outside).
    double half_space_excess(const HalfSpace& h, const point_type& x) const {
        if constexpr (LinearSpace<S>) {
            double v = 0.0;
            for (std::size_t i = 0; i < h.normal.size(); ++i) v += h.normal[i] * x[i];
            const double n = space_.dual_norm(h.normal);
            double ex = (h.lower - v) / n;
            if (h.upper) ex = std::max(ex, (v - *h.upper) / n);
            return ex;
        } else {
            return 0.0;
        }
    }

    point_type sample(Rng& rng) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return std::visit(
            [&](const auto& d) -> point_type {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, WholeSpace>) {
                    return space_.random_point(rng, space_.origin(), 3.0);
                } else if constexpr (std::is_same_v<D, Ball<point_type>>) {
                    return space_.random_point(rng, d.center, d.radius);
                } else if constexpr (std::is_same_v<D, Segment<point_type>>) {
                    return space_.combine(d.a, d.b, u(rng));
                } else {
                    if constexpr (LinearSpace<S>) {
                        point_type q = space_.random_point(rng, space_.origin(), 3.0);
                        double v = 0.0, nn = 0.0;
                        for (std::size_t i = 0; i < d.normal.size(); ++i) {
                            v += d.normal[i] * q[i];
                            nn += d.normal[i] * d.normal[i];
                        }
                        const double target = d.upper ? d.lower + u(rng) * (*d.upper - d.lower)
                                                      : d.lower + 3.0 * u(rng) * std::sqrt(nn);
                        for (std::size_t i = 0; i < q.size(); ++i) q[i] += (target - v) / nn * d.normal[i];
                        return q;
                    } else {
                        return space_.origin();
                    }
                }
            },
            desc_);
    }

    /// Diameter for bounded sets (an upper bound for balls).
    std::optional<double> diameter() const {
        if (const auto* b = std::get_if<Ball<point_type>>(&desc_)) return 2.0 * b->radius;
        if (const auto* s = std::get_if<Segment<point_type>>(&desc_)) return space_.dist(s->a, s->b);
        return std::nullopt;
    }

    bool bounded() const { return diameter().has_value(); }

    std::string describe() const {
        return std::visit(
            [](const auto& d) -> std::string {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, WholeSpace>) return "whole";
                else if constexpr (std::is_same_v<D, Ball<point_type>>) {
                    std::ostringstream os;
                    os << "ball(r=" << d.radius << ")";
                    return os.str();
                } else if constexpr (std::is_same_v<D, Segment<point_type>>) return "segment";
                else return d.upper ? "slab" : "half_space";
            },
            desc_);
    }

private:
    ConvexSet(S space, Descriptor d) : space_(std::move(space)), desc_(std::move(d)) {}

    S space_;
    Descriptor desc_;
};

} // namespace ucw
