#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>

#include "ucw/analysis/projection.hpp"
#include "ucw/mappings/map.hpp"

namespace ucw {

template <class P>
struct NonexpansiveReport {
    std::size_t trials = 0;
    std::size_t violations = 0;         ///< pairs with d(Tx,Ty) > d(x,y) beyond tolerance
    double max_excess = -std::numeric_limits<double>::infinity();  ///< max of d(Tx,Ty) - d(x,y)
    std::size_t domain_escapes = 0;     ///< sampled x with Tx outside the domain
    std::optional<double> fixed_point_residual;  ///< d(Tp, p) for the known fixed point
    std::optional<std::pair<P, P>> witness;

    bool ok(double tol = 1e-9) const {
        return violations == 0 && domain_escapes == 0 && (!fixed_point_residual || *fixed_point_residual <= tol);
    }
};

/// Samples pairs from the domain (half of them close pairs, which is where
/// locally expansive behaviour shows) and compares d(Tx,Ty) with d(x,y).
template <GeodesicSpace S>
NonexpansiveReport<typename S::point_type> check_nonexpansive(const NonexpansiveMap<S>& T, std::size_t trials,
                                                               std::uint64_t seed) {
    if (trials == 0) throw InputError("check_nonexpansive: trials must be >= 1");
    using P = typename S::point_type;
    const S& space = T.space();
    const auto& dom = T.domain();
    const Tolerance tol = space.tolerance();
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NonexpansiveReport<P> rep;
    for (std::size_t k = 0; k < trials; ++k) {
        P x = dom.sample(rng);
        P y = (k % 2 == 0) ? dom.sample(rng)
                           : chebyshev_projection(dom, space.random_point(rng, x, std::pow(10.0, -4.0 * u(rng))));
        const P tx = T(x), ty = T(y);
        const double dxy = space.dist(x, y), dt = space.dist(tx, ty);
        ++rep.trials;
        if (dt - dxy > rep.max_excess) rep.max_excess = dt - dxy;
        if (!tol.le(dt, dxy)) {
            ++rep.violations;
            if (!rep.witness) rep.witness = std::make_pair(x, y);
        }
        if (!dom.contains(tx)) ++rep.domain_escapes;
    }
    if (T.known_fixed_point()) {
        const P& p = *T.known_fixed_point();
        rep.fixed_point_residual = space.dist(T(p), p);
    }
    return rep;
}

} // namespace ucw
