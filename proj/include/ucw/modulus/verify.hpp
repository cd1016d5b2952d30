#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <limits>
#include <random>

#include "ucw/modulus/modulus.hpp"
#include "ucw/spaces/space.hpp"

namespace ucw {

template <class P>
struct ModulusWitness {
    P a, x, y;
    double r = 0.0;
    double eps = 0.0;
    double lhs = 0.0;  ///< d(midpoint, a)
    double rhs = 0.0;  ///< (1 - eta(r, eps)) r
};

template <class P>
struct ModulusReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    /// max over trials of lhs - rhs; violations count only the trials above the tolerance band
    double worst_margin = -std::numeric_limits<double>::infinity();
    /// trials where rejection sampling gave up and eps was set from the drawn pair
    std::size_t fallbacks = 0;
    /// trials whose (r, eps) lies outside the modulus' domain (tabulated moduli)
    std::size_t skipped = 0;
    std::optional<ModulusWitness<P>> witness;

    bool ok() const noexcept { return violations == 0; }
};

namespace detail {

template <class P>
struct UcSample {
    P a, x, y;
    double r;
    double eps;
    bool fallback;
};

/// Point at distance rho*r from a, rho = 1 half the time and uniform otherwise.
template <GeodesicSpace S>
typename S::point_type near_sphere(const S& space, Rng& rng, const typename S::point_type& a, double r) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto q = space.random_point(rng, a, 2.0 * r);
    const double dq = space.dist(a, q);
    if (dq == 0.0) return a;
    const double rho = u(rng) < 0.5 ? 1.0 : u(rng);
    return space.combine(a, q, std::min(1.0, rho * r / dq));
}

/// Largest radius the sampler may use in S. Spaces whose representation
/// loses precision at large radii declare max_sample_radius().
template <class S>
double sample_radius_cap(const S& space) {
    if constexpr (requires { space.max_sample_radius(); }) return std::min(1e2, space.max_sample_radius());
    else return 1e2;
}

/// Draws (a, x, y, r, eps) with d(x,a) <= r, d(y,a) <= r and d(x,y) >= eps r.
/// r is log-uniform in [1e-2, cap], eps uniform in (0,2]; after 64 rejected
/// draws eps is taken from the widest pair seen.
template <GeodesicSpace S>
UcSample<typename S::point_type> draw_uc_configuration(const S& space, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double hi = sample_radius_cap(space);
    const double r = std::exp(std::log(1e-2) + u(rng) * (std::log(hi) - std::log(1e-2)));
    double eps = 2.0 * (1.0 - u(rng));
    const auto a = space.random_point(rng, space.origin(), 2.0);
    typename S::point_type bx = a, by = a;
    double best = -1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto x = near_sphere(space, rng, a, r);
        auto y = near_sphere(space, rng, a, r);
        const double dxy = space.dist(x, y);
        if (dxy >= eps * r) return {a, std::move(x), std::move(y), r, eps, false};
        if (dxy > best) {
            best = dxy;
            bx = std::move(x);
            by = std::move(y);
        }
    }
    eps = std::min(2.0, best / r);
    return {a, std::move(bx), std::move(by), r, eps, true};
}

} // namespace detail

/// Samples the defining implication of uniform convexity and records every
/// trial where d(midpoint, a) exceeds (1 - eta(r, eps)) r beyond tolerance.
template <GeodesicSpace S>
ModulusReport<typename S::point_type> verify_modulus(const S& space, const Modulus& m, std::size_t trials,
                                                      std::uint64_t seed) {
    if (trials == 0) throw InputError("verify_modulus: trials must be >= 1");
    Rng rng(seed);
    const Tolerance tol = space.tolerance();
    ModulusReport<typename S::point_type> rep;
    for (std::size_t k = 0; k < trials; ++k) {
        auto s = detail::draw_uc_configuration(space, rng);
        ++rep.trials;
        if (s.fallback) ++rep.fallbacks;
        if (!(s.eps > 0.0)) continue;
        double eta = 0.0;
        try {
            eta = m.eval(s.r, s.eps);
        } catch (const ModulusError&) {
            ++rep.skipped;
            continue;
        }
        const auto mid = space.combine(s.x, s.y, 0.5);
        const double lhs = space.dist(mid, s.a);
        const double rhs = (1.0 - eta) * s.r;
        const double margin = lhs - rhs;
        if (margin > rep.worst_margin) rep.worst_margin = margin;
        if (!tol.le(lhs, rhs)) {
            ++rep.violations;
            if (!rep.witness) rep.witness = ModulusWitness<typename S::point_type>{s.a, s.x, s.y, s.r, s.eps, lhs, rhs};
        }
    }
    return rep;
}

/// Counts of violated trials for the four parts of the Groetsch-type bound
/// d((1-t)x (+) t y, a) <= (1 - 2t(1-t) eta(.)) r and its variants.
struct GroetschReport {
    std::size_t trials = 0;
    std::array<std::size_t, 4> violations{};  ///< (i) base, (ii) smaller eps, (iii) s >= r rescaled, (iv) monotone
    bool ok() const noexcept { return violations == std::array<std::size_t, 4>{}; }
};

template <GeodesicSpace S>
GroetschReport verify_groetsch(const S& space, const Modulus& m, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw InputError("verify_groetsch: trials must be >= 1");
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Tolerance tol = space.tolerance();
    GroetschReport rep;
    for (std::size_t k = 0; k < trials; ++k) {
        auto c = detail::draw_uc_configuration(space, rng);
        if (!(c.eps > 0.0)) continue;
        ++rep.trials;
        const double t = u(rng);
        const double w = 2.0 * t * (1.0 - t);
        const double lhs = space.dist(space.combine(c.x, c.y, t), c.a);
        const double psi = c.eps * (1.0 - u(rng));
        const double s = c.r * (1.0 + 3.0 * u(rng));
        if (!tol.le(lhs, groetsch_bound(m, c.r, c.eps, t))) ++rep.violations[0];
        if (psi > 0.0 && !tol.le(lhs, (1.0 - w * m.eval(c.r, psi)) * c.r)) ++rep.violations[1];
        if (!tol.le(lhs, (1.0 - w * m.eval(s, c.eps * c.r / s)) * s)) ++rep.violations[2];
        if (m.monotone() && !tol.le(lhs, (1.0 - w * m.eval(s, c.eps)) * c.r)) ++rep.violations[3];
    }
    return rep;
}

} // namespace ucw
