#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ucw/spaces/convex_set.hpp"

namespace ucw {

/// Self-map of a convex set that is expected to satisfy d(Tx, Ty) <= d(x, y).
/// Nonexpansiveness is a claim checked by `check_nonexpansive`, not enforced.
template <GeodesicSpace S>
class NonexpansiveMap {
public:
    using point_type = typename S::point_type;
    using Fn = std::function<point_type(const point_type&)>;

    NonexpansiveMap(ConvexSet<S> domain, Fn apply, std::string kind, std::optional<point_type> fixed_point = {})
        : domain_(std::move(domain)), apply_(std::move(apply)), kind_(std::move(kind)), fixed_(std::move(fixed_point)) {}

    point_type operator()(const point_type& x) const { return apply_(x); }

    const ConvexSet<S>& domain() const noexcept { return domain_; }
    const S& space() const noexcept { return domain_.space(); }
    const std::string& kind() const noexcept { return kind_; }
    const std::optional<point_type>& known_fixed_point() const noexcept { return fixed_; }

private:
    ConvexSet<S> domain_;
    Fn apply_;
    std::string kind_;
    std::optional<point_type> fixed_;
};

} // namespace ucw
