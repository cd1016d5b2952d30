#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "ucw/analysis/asymptotic.hpp"
#include "ucw/iterate/orbit.hpp"

namespace ucw {

enum class ProbeVerdict { bounded_with_approx_fixed_points, unbounded_without_approx_fixed_points, inconsistent };

inline const char* to_string(ProbeVerdict v) {
    switch (v) {
    case ProbeVerdict::bounded_with_approx_fixed_points: return "bounded_with_approx_fixed_points";
    case ProbeVerdict::unbounded_without_approx_fixed_points: return "unbounded_without_approx_fixed_points";
    case ProbeVerdict::inconsistent: return "inconsistent";
    }
    return "?";
}

struct OrbitProbe {
    bool bounded = true;            ///< stayed within radius_cap of x0 up to the horizon
    double max_distance = 0.0;      ///< max_n d(x0, x_n)
    double min_residual = std::numeric_limits<double>::infinity();  ///< min_n d(x_n, Tx_n)
    Index min_residual_at = 0;
    Index steps = 0;
};

/// Empirical indicators for the boundedness / fixed-point equivalences.
/// Unboundedness is only witnessed up to radius_cap and horizon.
struct FixedPointProbeReport {
    OrbitProbe picard;
    OrbitProbe km;  ///< lambda = 1/2
    std::vector<double> eps_ladder;
    std::vector<bool> fix_eps_witnessed;  ///< some orbit point lies in Fix_eps(T, x0, radius_cap)
    ProbeVerdict verdict = ProbeVerdict::inconsistent;
};

template <GeodesicSpace S>
FixedPointProbeReport fixed_point_probe(const NonexpansiveMap<S>& T, const typename S::point_type& x0, Index horizon,
                                        double radius_cap, std::vector<double> eps_ladder = {1.0, 0.1, 0.01}) {
    if (horizon < 1) throw InputError("fixed_point_probe: horizon must be >= 1");
    if (!(radius_cap > 0.0)) throw InputError("fixed_point_probe: radius_cap must be positive");
    const S& space = T.space();
    FixedPointProbeReport rep;
    rep.eps_ladder = eps_ladder;
    rep.fix_eps_witnessed.assign(eps_ladder.size(), false);
    auto observe = [&](OrbitProbe& o) {
        return [&](const StepRecord<typename S::point_type>& r) {
            if (r.n >= horizon) return;  // the engine also emits x_horizon's successor step
            o.steps = r.n + 1;
            const double d = space.dist(x0, r.x);
            o.max_distance = std::max(o.max_distance, d);
            if (d > radius_cap) o.bounded = false;
            if (r.d_x_tx < o.min_residual) {
                o.min_residual = r.d_x_tx;
                o.min_residual_at = r.n;
            }
            for (std::size_t i = 0; i < eps_ladder.size(); ++i)
                if (!rep.fix_eps_witnessed[i] && approx_fixed_set_member(T, x0, radius_cap, eps_ladder[i], r.x))
                    rep.fix_eps_witnessed[i] = true;
        };
    };
    run_ishikawa(T, x0, ScalarSchedule::constant(1.0), horizon - 1, observe(rep.picard), std::nullopt, true);
    run_ishikawa(T, x0, ScalarSchedule::constant(0.5), horizon - 1, observe(rep.km), std::nullopt, true);

    const bool all_fix = std::all_of(rep.fix_eps_witnessed.begin(), rep.fix_eps_witnessed.end(), [](bool b) { return b; });
    const bool no_fix = std::none_of(rep.fix_eps_witnessed.begin(), rep.fix_eps_witnessed.end(), [](bool b) { return b; });
    if (rep.picard.bounded && rep.km.bounded && all_fix) rep.verdict = ProbeVerdict::bounded_with_approx_fixed_points;
    else if (!rep.picard.bounded && !rep.km.bounded && no_fix)
        rep.verdict = ProbeVerdict::unbounded_without_approx_fixed_points;
    else rep.verdict = ProbeVerdict::inconsistent;
    return rep;
}

} // namespace ucw
