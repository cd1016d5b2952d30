#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "ucw/analysis/projection.hpp"
#include "ucw/mappings/map.hpp"
#include "ucw/modulus/modulus.hpp"

namespace ucw {

/// Finite truncation of a bounded sequence; limsup is estimated over the tail
/// window [tail_start, size).
template <GeodesicSpace S>
class BoundedSequence {
public:
    using point_type = typename S::point_type;

    /// `bound` is the declared B with pairwise distances <= B; when absent,
    /// 2 max_i d(x_0, x_i) is used.
    BoundedSequence(S space, std::vector<point_type> points, std::size_t tail_start,
                    std::optional<double> bound = std::nullopt)
        : space_(std::move(space)), points_(std::move(points)), tail_start_(tail_start) {
        if (points_.empty()) throw InputError("bounded sequence must be nonempty");
        for (const auto& p : points_) space_.validate(p);
        double far = 0.0;
        for (const auto& p : points_) far = std::max(far, space_.dist(points_.front(), p));
        if (bound) {
            if (!(*bound >= 0.0)) throw InputError("sequence bound must be >= 0");
            const Tolerance tol = space_.tolerance();
            // the pairwise check is quadratic; longer sequences are checked against x_0 only
            const std::size_t n = points_.size() <= 2000 ? points_.size() : 1;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < points_.size(); ++j)
                    if (!tol.le(space_.dist(points_[i], points_[j]), *bound))
                        throw InputError("sequence violates its declared bound");
            bound_ = *bound;
        } else {
            bound_ = 2.0 * far;
        }
    }

    const S& space() const noexcept { return space_; }
    const std::vector<point_type>& points() const noexcept { return points_; }
    std::size_t tail_start() const noexcept { return tail_start_; }
    std::size_t tail_length() const noexcept {
        return tail_start_ < points_.size() ? points_.size() - tail_start_ : 0;
    }
    double bound() const noexcept { return bound_; }

    BoundedSequence with_tail(std::size_t m) const {
        BoundedSequence c(*this);
        c.tail_start_ = m;
        return c;
    }

private:
    S space_;
    std::vector<point_type> points_;
    std::size_t tail_start_;
    double bound_ = 0.0;
};

/// max_{n >= tail_start} d(y, x_n), the surrogate for limsup_n d(y, x_n).
template <GeodesicSpace S>
double asymptotic_radius_at(const typename S::point_type& y, const BoundedSequence<S>& seq) {
    if (seq.tail_length() == 0) throw InputError("asymptotic radius: empty tail window");
    const auto& pts = seq.points();
    double r = 0.0;
    for (std::size_t i = seq.tail_start(); i < pts.size(); ++i) r = std::max(r, seq.space().dist(y, pts[i]));
    return r;
}

template <class P>
struct AsymptoticCenterResult {
    P center;
    double radius = 0.0;
    std::size_t tail_start = 0;
    std::size_t tail_length = 0;
    std::size_t evaluations = 0;
    double final_step = 0.0;
    /// functional values at refinement probes around the center (radii 1e-2 .. 1e-7)
    std::vector<double> probe_values;
    /// min(probe_values) - radius; nonnegative up to tol when the center is a minimizer
    double refinement_gap = 0.0;
    /// every y in C with r(y) <= radius + tol lies within this distance of
    /// the center (from the modulus); absent when no modulus was supplied
    std::optional<double> uniqueness_radius;
};

struct CenterOptions {
    double tol = 1e-10;
    std::size_t max_evaluations = 400000;
    std::uint64_t seed = 0;
};

namespace detail {

template <GeodesicSpace S>
struct Minimum {
    typename S::point_type point;
    double value;
    double step;
};

/// Derivative-free minimisation of a convex function over a closed convex set:
/// a stencil pattern search with projected trial points, plus golden-section
/// searches along geodesics toward midpoints of the currently farthest points.
template <GeodesicSpace S, class F>
Minimum<S> pattern_search(const ConvexSet<S>& C, const std::vector<typename S::point_type>& anchors, F&& f,
                          typename S::point_type start, double h, const CenterOptions& opt, std::size_t& evals) {
    using P = typename S::point_type;
    const S& space = C.space();
    Rng rng(opt.seed);
    auto eval = [&](const P& y) {
        if (++evals > opt.max_evaluations) {
            std::ostringstream os;
            os << "asymptotic center: no convergence within " << opt.max_evaluations
               << " evaluations (step " << h << ")";
            throw NumericError(os.str());
        }
        return f(y);
    };
    P y = chebyshev_projection(C, start);
    double fy = eval(y);
    while (h > opt.tol * 1e-2) {
        bool improved = false;
        for (const P& q : space.stencil(y, h, rng)) {
            P qp = chebyshev_projection(C, q);
            const double v = eval(qp);
            if (v < fy) {
                fy = v;
                y = std::move(qp);
                improved = true;
            }
        }
        if (!improved) {
            // anchors at (nearly) maximal distance pull the minimiser toward their midpoints
            std::vector<std::size_t> active;
            for (std::size_t i = 0; i < anchors.size(); ++i)
                if (space.dist(y, anchors[i]) >= fy - std::max(h, 1e-12)) active.push_back(i);
            std::vector<P> targets;
            for (std::size_t i = 0; i < active.size() && i < 6; ++i)
                for (std::size_t j = i + 1; j < active.size() && j < 6; ++j)
                    targets.push_back(space.combine(anchors[active[i]], anchors[active[j]], 0.5));
            for (const P& tgt : targets) {
                auto g = [&](double t) { return eval(chebyshev_projection(C, space.combine(y, tgt, t))); };
                const double t = golden_section(g, 0.0, 1.0, 1e-12, 80);
                P cand = chebyshev_projection(C, space.combine(y, tgt, t));
                const double v = eval(cand);
                if (v < fy) {
                    fy = v;
                    y = std::move(cand);
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return {y, fy, h};
}

} // namespace detail

/// Sup of eps in (0,2] with eta(R, eps) <= slack, by bisection (eta nondecreasing in eps).
inline double invert_modulus(const Modulus& m, double R, double slack) {
    if (!(R > 0.0)) return 0.0;
    if (m.eval(R, 2.0) <= slack) return 2.0;
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || m.eval(R, mid) <= slack) lo = mid;
        else hi = mid;
    }
    return hi;
}

/// Minimiser over C of y -> max_{n in tail} d(y, x_n).
template <GeodesicSpace S>
AsymptoticCenterResult<typename S::point_type> asymptotic_center(const BoundedSequence<S>& seq, const ConvexSet<S>& C,
                                                                 const CenterOptions& opt = {},
                                                                 const Modulus* modulus = nullptr) {
    using P = typename S::point_type;
    if (seq.tail_length() == 0) throw InputError("asymptotic center: empty tail window");
    const S& space = C.space();
    const auto& pts = seq.points();
    const std::vector<P> tail(pts.begin() + static_cast<std::ptrdiff_t>(seq.tail_start()), pts.end());
    auto f = [&](const P& y) {
        double r = 0.0;
        for (const auto& x : tail) r = std::max(r, space.dist(y, x));
        return r;
    };
    // start from the best projected tail point among a thinned selection
    std::size_t evals = 0;
    const std::size_t stride = std::max<std::size_t>(1, tail.size() / 64);
    P start = chebyshev_projection(C, tail.front());
    double fstart = f(start);
    for (std::size_t i = 0; i < tail.size(); i += stride) {
        P c = chebyshev_projection(C, tail[i]);
        const double v = f(c);
        ++evals;
        if (v < fstart) {
            fstart = v;
            start = std::move(c);
        }
    }
    double h = std::max(fstart, 1e-3);
    auto best = detail::pattern_search(C, tail, f, start, h, opt, evals);

    AsymptoticCenterResult<P> res;
    Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int attempt = 0;; ++attempt) {
        res.probe_values.clear();
        double probe_min = std::numeric_limits<double>::infinity();
        P probe_best = best.point;
        for (double r = 1e-2; r >= 1e-7; r *= 0.1) {
            for (const P& q : space.stencil(best.point, r, rng)) {
                P qp = chebyshev_projection(C, q);
                const double v = f(qp);
                ++evals;
                res.probe_values.push_back(v);
                if (v < probe_min) {
                    probe_min = v;
                    probe_best = qp;
                }
            }
        }
        res.refinement_gap = probe_min - best.value;
        if (res.refinement_gap >= -opt.tol) break;
        if (attempt >= 5) {
            std::ostringstream os;
            os << "asymptotic center: refinement probe improves the value by " << -res.refinement_gap;
            throw NumericError(os.str());
        }
        best = detail::pattern_search(C, tail, f, probe_best, 1e-2, opt, evals);
    }
    res.center = best.point;
    res.radius = best.value;
    res.tail_start = seq.tail_start();
    res.tail_length = tail.size();
    res.evaluations = evals;
    res.final_step = best.step;
    if (modulus) {
        // With R = r + tol, d(c, y) >= eps R forces the midpoint below
        // (1 - eta(R, eps)) R, which cannot be below r unless eta(R, eps) <= tol / R.
        const double R = res.radius + opt.tol;
        res.uniqueness_radius = R * invert_modulus(*modulus, R, opt.tol / R);
    }
    return res;
}

/// Membership in Fix_eps(T, x, b) = { y in C : d(y, x) <= b and d(y, Ty) < eps }.
template <GeodesicSpace S>
bool approx_fixed_set_member(const NonexpansiveMap<S>& T, const typename S::point_type& x, double b, double eps,
                             const typename S::point_type& y) {
    if (!(eps > 0.0)) throw InputError("approx_fixed_set_member: eps must be positive");
    if (!(b > 0.0)) throw InputError("approx_fixed_set_member: b must be positive");
    const S& space = T.space();
    return T.domain().contains(y) && space.dist(y, x) <= b && space.dist(y, T(y)) < eps;
}

} // namespace ucw
