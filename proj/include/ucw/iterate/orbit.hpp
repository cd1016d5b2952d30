#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ucw/core/error.hpp"
#include "ucw/iterate/schedule.hpp"
#include "ucw/mappings/map.hpp"

namespace ucw {

/// One Ishikawa step n: y_n = (1-s_n)x_n (+) s_n Tx_n,
/// x_{n+1} = (1-lambda_n)x_n (+) lambda_n Ty_n.
template <class P>
struct StepRecord {
    Index n = 0;
    double lambda = 0.0;
    double s = 0.0;
    P x, tx, y, ty, next;
    double d_x_tx = 0.0;
    double d_x_ty = 0.0;
    double d_x_y = 0.0;
    double d_y_ty = 0.0;
    double d_x_next = 0.0;
    std::optional<double> d_x_p;
    std::optional<double> d_next_p;
};

template <class P>
struct OrbitRecord {
    std::vector<StepRecord<P>> steps;  ///< n = 0..horizon
    std::size_t size() const noexcept { return steps.size(); }
    const StepRecord<P>& operator[](std::size_t n) const { return steps[n]; }
};

/// Runs `steps + 1` Ishikawa steps (records for n = 0..steps) and hands each
/// record to `visit`. With s_n = 0 the step reuses Tx_n as Ty_n, which is the
/// KM recurrence exactly; with lambda_n = 1 as well it is the Picard step.
template <GeodesicSpace S, class Visitor>
void run_ishikawa(const NonexpansiveMap<S>& T, const typename S::point_type& x0, const ScalarSchedule& sched,
                  Index steps, Visitor&& visit, const std::optional<typename S::point_type>& p = std::nullopt,
                  bool ignore_s = false) {
    using P = typename S::point_type;
    const S& space = T.space();
    space.validate(x0);
    if (!T.domain().contains(x0)) throw InputError("starting point lies outside the domain of the map");
    P x = x0;
    std::optional<double> dxp;
    if (p) dxp = space.dist(x, *p);
    for (Index n = 0; n <= steps; ++n) {
        StepRecord<P> r;
        r.n = n;
        r.lambda = sched.lambda_at(n);
        r.s = ignore_s ? 0.0 : sched.s_at(n);
        r.tx = T(r.x = x);
        if (r.s == 0.0) {
            r.y = x;
            r.ty = r.tx;
        } else {
            r.y = space.combine(x, r.tx, r.s);
            r.ty = T(r.y);
        }
        r.next = space.combine(x, r.ty, r.lambda);
        if (!T.domain().contains(r.next)) throw DomainViolation("iterate left the domain of the map", n + 1);
        r.d_x_tx = space.dist(x, r.tx);
        r.d_x_ty = r.s == 0.0 ? r.d_x_tx : space.dist(x, r.ty);
        r.d_x_y = space.dist(x, r.y);
        r.d_y_ty = r.s == 0.0 ? r.d_x_tx : space.dist(r.y, r.ty);
        r.d_x_next = space.dist(x, r.next);
        if (p) {
            r.d_x_p = dxp;
            dxp = space.dist(r.next, *p);
            r.d_next_p = dxp;
        }
        visit(static_cast<const StepRecord<P>&>(r));
        x = std::move(r.next);
    }
}

template <GeodesicSpace S>
OrbitRecord<typename S::point_type> ishikawa_orbit(const NonexpansiveMap<S>& T, const typename S::point_type& x0,
                                                   const ScalarSchedule& sched, Index steps,
                                                   const std::optional<typename S::point_type>& p = std::nullopt) {
    OrbitRecord<typename S::point_type> out;
    out.steps.reserve(static_cast<std::size_t>(steps) + 1);
    run_ishikawa(T, x0, sched, steps, [&](const auto& r) { out.steps.push_back(r); }, p);
    return out;
}

/// x_{n+1} = (1-lambda_n)x_n (+) lambda_n Tx_n; s_n is ignored.
template <GeodesicSpace S>
OrbitRecord<typename S::point_type> km_orbit(const NonexpansiveMap<S>& T, const typename S::point_type& x0,
                                             const ScalarSchedule& sched, Index steps,
                                             const std::optional<typename S::point_type>& p = std::nullopt) {
    OrbitRecord<typename S::point_type> out;
    out.steps.reserve(static_cast<std::size_t>(steps) + 1);
    run_ishikawa(T, x0, sched, steps, [&](const auto& r) { out.steps.push_back(r); }, p, true);
    return out;
}

/// x_{n+1} = T x_n.
template <GeodesicSpace S>
OrbitRecord<typename S::point_type> picard_orbit(const NonexpansiveMap<S>& T, const typename S::point_type& x0,
                                                 Index steps,
                                                 const std::optional<typename S::point_type>& p = std::nullopt) {
    return km_orbit(T, x0, ScalarSchedule::constant(1.0), steps, p);
}

/// Smallest recorded n with d(x_n, Tx_n) < eps.
template <class P>
std::optional<Index> first_hit(const OrbitRecord<P>& orbit, double eps) {
    if (!(eps > 0.0)) throw InputError("first_hit: eps must be positive");
    for (const auto& r : orbit.steps)
        if (r.d_x_tx < eps) return r.n;
    return std::nullopt;
}

/// Same search on d(x_n, Ty_n).
template <class P>
std::optional<Index> first_hit_ty(const OrbitRecord<P>& orbit, double eps) {
    if (!(eps > 0.0)) throw InputError("first_hit_ty: eps must be positive");
    for (const auto& r : orbit.steps)
        if (r.d_x_ty < eps) return r.n;
    return std::nullopt;
}

} // namespace ucw
