#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ucw/harness/config.hpp"
#include "ucw/harness/report.hpp"
#include "ucw/iterate.hpp"
#include "ucw/mappings.hpp"
#include "ucw/modulus.hpp"
#include "ucw/rates.hpp"

namespace ucw {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<Index> horizon;
    bool timing = true;
    /// refuse to iterate further than this unless the config sets "max_horizon"
    Index max_horizon = 50'000'000;
    std::optional<std::string> plot_path;
};

/// Outcome of the hypothesis checks that precede a run.
struct ValidationOutcome {
    std::string experiment_id;
    double b = 0.0;
    std::string b_source;
    Index horizon = 0;
    std::vector<RateCertificate> certificates;
    std::vector<double> cert_eps;  ///< eps of certificates[i]
    ValidationSummary empirical;
};

/// Runs `f(space)` with the space described by cfg["space"].
template <class F>
decltype(auto) with_space(const Json& cfg, F&& f) {
    const Json& sj = cfg::req(cfg, "space", "config");
    const std::string k = cfg::kind(sj, "space");
    try {
        if (k == "euclidean") return f(EuclideanSpace(cfg::index(cfg::req(sj, "dim", "space"), "space.dim")));
        if (k == "lp") return f(LpSpace(cfg::index(cfg::req(sj, "dim", "space"), "space.dim"), cfg::num(sj, "p", "space")));
        if (k == "hyperbolic2") return f(HyperbolicPlane());
        if (k == "rtree") return f(StarTree(static_cast<int>(cfg::index(cfg::req(sj, "rays", "space"), "space.rays"))));
    } catch (const InputError& e) {
        throw ConfigError(std::string("space: ") + e.what());
    }
    throw ConfigError("space: unknown kind '" + k + "'");
}

namespace detail {

template <GeodesicSpace S>
struct Prepared {
    using P = typename S::point_type;
    std::string id;
    S space;
    ConvexSet<S> domain;
    NonexpansiveMap<S> T;
    P x0;
    std::optional<P> p;
    ScalarSchedule sched;
    Modulus modulus;
    std::string modulus_kind;
    double b = 0.0;
    std::string b_source;
    std::vector<double> eps;
    std::vector<Formula> formulas;
    Index k = 0;
    std::uint64_t seed = 0;
    std::size_t nonexpansive_trials = 2000;
    std::size_t modulus_trials = 2000;
    Index max_horizon = 0;
};

template <GeodesicSpace S>
Prepared<S> prepare(const S& space, const Json& j, const RunOptions& opt) {
    using P = typename S::point_type;
    const std::string id = j.contains("id") ? j.at("id").get<std::string>() : std::string("experiment");
    ConvexSet<S> domain = j.contains("domain") ? parse_set(space, j.at("domain"), "domain") : ConvexSet<S>::whole(space);
    NonexpansiveMap<S> T = restrict_map(parse_map(space, cfg::req(j, "mapping", "config"), "mapping"), domain);
    P x0 = parse_point(space, cfg::req(j, "x0", "config"), "x0");
    if (!domain.contains(x0)) throw ConfigError("x0 lies outside the domain");
    std::optional<P> p = T.known_fixed_point();
    if (j.contains("fixed_point")) p = parse_point(space, j.at("fixed_point"), "fixed_point");
    if (p && !domain.contains(*p)) p.reset();

    ScalarSchedule sched = parse_schedule(cfg::req(j, "schedule", "config"), "schedule");
    const Json& mj = cfg::req(j, "modulus", "config");
    Modulus modulus = parse_modulus(mj, "modulus");

    // b: explicit value, else d(x0, p), else the diameter of a bounded domain
    double b = 0.0;
    std::string source;
    if (j.contains("b")) {
        b = cfg::num(j.at("b"), "b");
        if (!(b > 0.0)) throw ConfigError("b must be positive");
        if (p && space.dist(x0, *p) > b + space.tolerance().abs)
            throw ConfigError("hypothesis violated: b must satisfy b >= d(x0, p) for the fixed point p");
        source = "config";
    } else if (p && space.dist(x0, *p) > 0.0) {
        b = space.dist(x0, *p);
        source = "fixed_point";
    } else if (domain.diameter() && *domain.diameter() > 0.0) {
        b = *domain.diameter();
        source = "diameter";
    } else {
        throw ConfigError("b is required: no fixed point at positive distance from x0 and no bounded domain");
    }

    std::vector<double> eps = j.contains("epsilons") ? cfg::numbers(j.at("epsilons"), "epsilons")
                                                     : std::vector<double>{1.0, 0.3, 0.1, 0.03};
    if (eps.empty()) throw ConfigError("epsilons must be nonempty");
    for (double e : eps)
        if (!(e > 0.0)) throw ConfigError("every epsilon must be positive");

    Prepared<S> out{id,     space, std::move(domain), std::move(T), std::move(x0), std::move(p), std::move(sched),
                    std::move(modulus), cfg::kind(mj, "modulus"), b, source, std::move(eps), parse_formulas(j)};
    out.k = j.contains("k") ? cfg::index(j.at("k"), "k") : 0;
    out.seed = opt.seed ? *opt.seed : (j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0);
    if (j.contains("checks")) {
        const Json& c = j.at("checks");
        if (c.contains("nonexpansive_trials")) out.nonexpansive_trials = cfg::index(c.at("nonexpansive_trials"), "checks");
        if (c.contains("modulus_trials")) out.modulus_trials = cfg::index(c.at("modulus_trials"), "checks");
    }
    out.max_horizon = j.contains("max_horizon") ? cfg::index(j.at("max_horizon"), "max_horizon") : opt.max_horizon;
    return out;
}

/// Evaluates one certificate, translating theorem-hypothesis failures into
/// configuration errors that name the hypothesis.
template <GeodesicSpace S>
RateCertificate evaluate(const Prepared<S>& e, Formula f, double eps) {
    const auto& s = e.sched;
    auto need_theta = [&]() -> const DivergenceRate& {
        if (!s.theta())
            throw ConfigError("hypothesis violated: no divergence rate for sum lambda_n(1-lambda_n) "
                              "(lambda_n(1-lambda_n) = 0 for schedule " + s.describe() + ")");
        return *s.theta();
    };
    auto need_L = [&]() -> Index {
        if (!s.L()) throw ConfigError("hypothesis violated: no L >= 1 with s_n <= 1 - 1/L");
        return *s.L();
    };
    auto need_const_lambda = [&]() -> double {
        const auto c = s.constant_lambda();
        if (!c || !(*c > 0.0 && *c < 1.0))
            throw ConfigError("hypothesis violated: formula needs a constant lambda in (0,1)");
        return *c;
    };
    auto need_delta = [&]() -> const CauchyModulus& {
        if (!s.delta()) throw ConfigError("hypothesis violated: sum s_n has no Cauchy modulus (s_n not summable)");
        return *s.delta();
    };
    try {
        switch (f) {
        case Formula::h: return h_certificate(eps, e.k, e.modulus, e.b, need_theta());
        case Formula::psi: return psi_certificate(eps, e.k, e.modulus, e.b, need_theta(), need_L(), s.N0());
        case Formula::phi_afp: return phi_afp_certificate(eps, e.modulus, e.b, need_theta(), need_L(), s.N0());
        case Formula::phi_main:
        case Formula::phi_factored: {
            if (!s.gamma())
                throw ConfigError("hypothesis violated: sum s_n(1-lambda_n) has no Cauchy modulus gamma");
            RateInputs in{eps, e.b, &e.modulus, need_theta(), *s.gamma(), need_L(), s.N0()};
            return f == Formula::phi_main ? phi_main(in) : phi_factored(in);
        }
        case Formula::phi_const_lambda:
            return phi_const_lambda(eps, e.modulus, e.b, need_const_lambda(), need_L(), s.N0(), need_delta());
        case Formula::phi_cat0:
            if (e.modulus_kind != "cat0") throw ConfigError("hypothesis violated: phi_cat0 needs the cat0 modulus");
            return phi_cat0(eps, e.b, need_const_lambda(), need_L(), s.N0(), need_delta());
        case Formula::km_rate:
            if (!s.s_is_zero()) throw ConfigError("hypothesis violated: km_rate needs s_n = 0 for all n");
            return km_rate(eps, e.modulus, e.b, need_theta());
        }
    } catch (const HypothesisError& ex) {
        throw ConfigError(std::string("hypothesis violated: ") + ex.what());
    } catch (const ModulusError& ex) {
        throw ConfigError(std::string(to_string(f)) + ": " + ex.what());
    }
    throw ConfigError("unknown formula");
}

/// theta argument used by a certificate (the index theta was applied to).
inline std::optional<Index> theta_argument(const RateCertificate& c, Index N0) {
    if (!c.inner) return std::nullopt;
    switch (c.formula) {
    case Formula::h:
    case Formula::km_rate: return *c.inner + c.k;
    case Formula::psi:
    case Formula::phi_afp: return *c.inner + c.k + N0;
    default: return std::nullopt;
    }
}

template <GeodesicSpace S>
ValidationOutcome validate_prepared(const Prepared<S>& e, const RunOptions& opt) {
    ValidationOutcome out;
    out.experiment_id = e.id;
    out.b = e.b;
    out.b_source = e.b_source;
    if (!e.modulus.monotone()) throw ConfigError("hypothesis violated: the modulus must be monotone");
    Index max_bound = 0;
    for (double eps : e.eps) {
        for (Formula f : e.formulas) {
            out.certificates.push_back(evaluate(e, f, eps));
            out.cert_eps.push_back(eps);
            max_bound = std::max(max_bound, out.certificates.back().bound);
        }
    }
    out.horizon = opt.horizon ? *opt.horizon : checked_add(max_bound, 100);
    if (out.horizon > e.max_horizon) {
        std::ostringstream os;
        os << "horizon " << out.horizon << " exceeds max_horizon " << e.max_horizon
           << "; lower b or the smallest epsilon, or raise max_horizon";
        throw ConfigError(os.str());
    }

    // certificates are validated on the range the run relies on
    const auto& s = e.sched;
    auto fail = [](const CertificateCheck& c) {
        if (!c.ok) throw ConfigError("hypothesis violated: " + c.message);
    };
    bool uses_theta = false, uses_L = false, uses_gamma = false, uses_delta = false;
    std::vector<double> gamma_eps, delta_eps;
    for (std::size_t i = 0; i < out.certificates.size(); ++i) {
        const auto& c = out.certificates[i];
        const double eps = out.cert_eps[i];
        switch (c.formula) {
        case Formula::h:
        case Formula::km_rate: uses_theta = true; break;
        case Formula::psi:
        case Formula::phi_afp: uses_theta = uses_L = true; break;
        case Formula::phi_main:
        case Formula::phi_factored:
            uses_theta = uses_L = uses_gamma = true;
            gamma_eps.push_back(outward::div(eps, outward::mul(8.0, e.b, 1), -1));
            break;
        case Formula::phi_const_lambda:
        case Formula::phi_cat0:
            uses_L = uses_delta = true;
            // the argument phi_const_lambda / phi_cat0 pass to delta
            delta_eps.push_back(outward::div(
                eps, outward::mul(outward::mul(8.0, e.b, 1), outward::add(1.0, -*s.constant_lambda(), 1), 1), -1));
            break;
        }
    }
    if (uses_theta) {
        fail(s.validate_theta(std::min<Index>(out.horizon, 2000)));
        // the arguments actually used
        for (const auto& c : out.certificates) {
            if (auto arg = theta_argument(c, s.N0())) {
                const Index t = (*s.theta())(*arg);
                double acc = 0.0;
                for (Index i = 0; i <= t; ++i) acc += s.lambda_at(i) * (1.0 - s.lambda_at(i));
                if (acc < static_cast<double>(*arg) * (1.0 - 1e-12))
                    throw ConfigError("hypothesis violated: sum lambda_n(1-lambda_n) divergence certificate failed at n=" +
                                      std::to_string(*arg));
            }
        }
    }
    if (uses_L) fail(s.validate_L(out.horizon));
    if (uses_gamma) fail(s.validate_gamma(gamma_eps, out.horizon));
    if (uses_delta) fail(s.validate_delta(delta_eps, out.horizon));

    // empirical checks of the standing assumptions
    auto& v = out.empirical;
    const auto ne = check_nonexpansive(e.T, e.nonexpansive_trials, e.seed);
    v.nonexpansive_trials = ne.trials;
    v.nonexpansive_violations = ne.violations;
    v.max_excess = ne.max_excess;
    v.domain_escapes = ne.domain_escapes;
    if (e.p) v.fixed_point_residual = e.space.dist(e.T(*e.p), *e.p);
    if (ne.violations) v.problems.push_back("map is not nonexpansive on sampled pairs");
    if (ne.domain_escapes) v.problems.push_back("map sends sampled points outside its domain");
    if (v.fixed_point_residual && *v.fixed_point_residual > e.space.tolerance().abs)
        v.problems.push_back("declared fixed point is not fixed");
    if (e.modulus_trials > 0) {
        const auto mr = verify_modulus(e.space, e.modulus, e.modulus_trials, e.seed + 1);
        v.modulus_trials = mr.trials;
        v.modulus_violations = mr.violations;
        v.modulus_worst_margin = mr.worst_margin;
        if (!mr.ok()) v.problems.push_back("modulus fails the uniform convexity check on this space");
    }
    v.ok = v.problems.empty();
    return out;
}

struct EpsTrack {
    std::optional<Index> first_tx, first_ty, first_tx_k, first_ty_k, last_bad_tx;
};

template <GeodesicSpace S>
ExperimentReport run_prepared(const Prepared<S>& e, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    ValidationOutcome val = validate_prepared(e, opt);

    ExperimentReport rep;
    rep.experiment_id = e.id;
    rep.space = e.space.describe();
    rep.mapping = e.T.kind();
    rep.schedule = e.sched.describe();
    rep.modulus = e.modulus.describe();
    rep.b = e.b;
    rep.b_source = e.b_source;
    rep.horizon = val.horizon;
    rep.seed = e.seed;
    rep.validation = val.empirical;

    std::vector<EpsTrack> tracks(e.eps.size());
    Lemma41Checker checker(e.space.tolerance(), &e.modulus);
    auto& o = rep.orbit;
    o.min_residual = std::numeric_limits<double>::infinity();
    std::vector<std::pair<Index, double>> plot;
    const Index stride = std::max<Index>(1, (val.horizon + 1) / 5000 + 1);
    run_ishikawa(
        e.T, e.x0, e.sched, val.horizon,
        [&](const StepRecord<typename S::point_type>& r) {
            checker.feed(r);
            if (r.n == 0) o.initial_residual = r.d_x_tx;
            o.final_residual = r.d_x_tx;
            o.min_residual = std::min(o.min_residual, r.d_x_tx);
            o.max_distance_from_x0 = std::max(o.max_distance_from_x0, e.space.dist(e.x0, r.x));
            if (r.d_x_p) o.final_distance_to_p = r.d_x_p;
            if (opt.plot_path && r.n % stride == 0) plot.emplace_back(r.n, r.d_x_tx);
            for (std::size_t i = 0; i < e.eps.size(); ++i) {
                auto& t = tracks[i];
                const double eps = e.eps[i];
                if (r.d_x_tx < eps) {
                    if (!t.first_tx) t.first_tx = r.n;
                    if (!t.first_tx_k && r.n >= e.k) t.first_tx_k = r.n;
                } else {
                    t.last_bad_tx = r.n;
                }
                if (r.d_x_ty < eps) {
                    if (!t.first_ty) t.first_ty = r.n;
                    if (!t.first_ty_k && r.n >= e.k) t.first_ty_k = r.n;
                }
            }
        },
        e.p);
    o.steps = val.horizon;
    const auto& lr = checker.report();
    o.lemma41_violations = lr.total();
    for (std::size_t i = 0; i < lr.violations.size(); ++i) o.lemma41_breakdown[ineq_names[i]] = lr.violations[i];
    o.descent_checks = lr.descent_checks;
    if (lr.total() > 0) {
        rep.validation.problems.push_back("per-step Ishikawa inequalities violated along the orbit");
        rep.validation.ok = false;
    }

    bool all = true;
    for (std::size_t i = 0; i < val.certificates.size(); ++i) {
        const auto& c = val.certificates[i];
        const double eps = val.cert_eps[i];
        const auto& t = tracks[static_cast<std::size_t>(std::find(e.eps.begin(), e.eps.end(), eps) - e.eps.begin())];
        ReportRow row;
        row.formula = to_string(c.formula);
        row.epsilon = eps;
        row.bound = c.bound;
        row.guarantee = to_string(c.guarantee);
        row.branch = to_string(c.branch);
        row.diagnostic = to_string(c.diagnostic);
        row.k = c.k;
        row.inner = c.inner;
        for (const auto& [name, value] : c.inputs)
            std::visit([&, &name = name](const auto& x) { row.inputs[name] = x; }, value);
        bool ok;
        if (c.guarantee == Guarantee::for_all) {
            row.first_hit = t.first_tx;
            row.tail_ok = !(t.last_bad_tx && *t.last_bad_tx >= c.bound);
            ok = *row.tail_ok && c.bound <= val.horizon;
        } else {
            const bool k0 = c.k == 0;
            row.first_hit = c.diagnostic == Diagnostic::x_ty ? (k0 ? t.first_ty : t.first_ty_k)
                                                             : (k0 ? t.first_tx : t.first_tx_k);
            ok = row.first_hit && *row.first_hit <= c.bound;
        }
        if (row.first_hit && c.bound > 0)
            row.margin = static_cast<double>(*row.first_hit) / static_cast<double>(c.bound);
        row.passed = ok && rep.validation.ok;
        all = all && row.passed;
        rep.rows.push_back(std::move(row));
    }
    rep.passed = all && rep.validation.ok;
    if (opt.plot_path) {
        std::ostringstream os;
        os << "n,d_x_tx\n";
        for (const auto& [n, d] : plot) os << n << ',' << detail::fmt_double(d) << '\n';
        write_text_file(*opt.plot_path, os.str());
    }
    if (opt.timing)
        rep.wallclock_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace detail

/// Hypothesis checks only: certificate evaluation, certificate validation up
/// to the horizon, and the sampled nonexpansiveness / modulus checks.
inline ValidationOutcome validate_experiment(const Json& cfg, const RunOptions& opt = {}) {
    return with_space(cfg, [&](const auto& space) {
        return detail::validate_prepared(detail::prepare(space, cfg, opt), opt);
    });
}

inline ExperimentReport run_experiment(const Json& cfg, const RunOptions& opt = {}) {
    return with_space(cfg, [&](const auto& space) { return detail::run_prepared(detail::prepare(space, cfg, opt), opt); });
}

/// CSV of n, d(x_n,Tx_n), d(x_n,Ty_n), d(x_n,p) (blank without p) plus a
/// metadata record describing the run.
struct OrbitDump {
    std::string csv;
    Json meta;
};

inline OrbitDump dump_orbit(const Json& cfg, Index steps, const RunOptions& opt = {}) {
    return with_space(cfg, [&](const auto& space) {
        auto e = detail::prepare(space, cfg, opt);
        std::ostringstream os;
        os << "n,d_x_tx,d_x_ty,d_x_p\n";
        run_ishikawa(
            e.T, e.x0, e.sched, steps,
            [&](const auto& r) {
                os << r.n << ',' << detail::fmt_double(r.d_x_tx) << ',' << detail::fmt_double(r.d_x_ty) << ',';
                if (r.d_x_p) os << detail::fmt_double(*r.d_x_p);
                os << '\n';
            },
            e.p);
        Json meta;
        meta["experiment_id"] = e.id;
        meta["space"] = e.space.describe();
        meta["mapping"] = e.T.kind();
        meta["schedule"] = e.sched.describe();
        meta["modulus"] = e.modulus.describe();
        meta["seed"] = e.seed;
        meta["steps"] = steps;
        meta["x0"] = point_to_json(e.x0);
        meta["fixed_point"] = e.p ? point_to_json(*e.p) : Json(nullptr);
        return OrbitDump{os.str(), meta};
    });
}

} // namespace ucw
