#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucw/mappings.hpp"
#include "ucw/iterate/schedule.hpp"
#include "ucw/modulus/modulus.hpp"
#include "ucw/rates/certificate.hpp"
#include "ucw/spaces.hpp"

namespace ucw {

using Json = nlohmann::ordered_json;

inline Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

namespace cfg {

inline const Json& req(const Json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(ctx + ": missing field '" + key + "'");
    return j.at(key);
}

inline double num(const Json& j, const std::string& ctx) {
    if (j.is_number()) return j.get<double>();
    // "pi", "pi/2", "2pi/3" style angles
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto pos = s.find("pi");
        if (pos != std::string::npos) {
            double mult = 1.0, div = 1.0;
            if (pos > 0) mult = std::stod(s.substr(0, pos));
            const auto slash = s.find('/', pos);
            if (slash != std::string::npos) div = std::stod(s.substr(slash + 1));
            return mult * std::numbers::pi / div;
        }
    }
    throw ConfigError(ctx + ": expected a number");
}

inline double num(const Json& j, const char* key, const std::string& ctx) { return num(req(j, key, ctx), ctx + "." + key); }

inline double num_or(const Json& j, const char* key, double dflt, const std::string& ctx) {
    return j.contains(key) ? num(j.at(key), ctx + "." + key) : dflt;
}

inline std::string kind(const Json& j, const std::string& ctx) {
    if (j.is_string()) return j.get<std::string>();
    const Json& k = req(j, "kind", ctx);
    if (!k.is_string()) throw ConfigError(ctx + ".kind must be a string");
    return k.get<std::string>();
}

inline std::vector<double> numbers(const Json& j, const std::string& ctx) {
    if (!j.is_array()) throw ConfigError(ctx + ": expected an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(num(j[i], ctx + "[" + std::to_string(i) + "]"));
    return v;
}

inline Index index(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(ctx + ": expected a nonnegative integer");
    return j.get<Index>();
}

} // namespace cfg

// ---- points -------------------------------------------------------------

template <class S>
typename S::point_type parse_point(const S& space, const Json& j, const std::string& ctx);

template <>
inline Vec parse_point<EuclideanSpace>(const EuclideanSpace& space, const Json& j, const std::string& ctx) {
    Vec v = cfg::numbers(j, ctx);
    try {
        space.validate(v);
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    return v;
}

template <>
inline Vec parse_point<LpSpace>(const LpSpace& space, const Json& j, const std::string& ctx) {
    Vec v = cfg::numbers(j, ctx);
    try {
        space.validate(v);
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    return v;
}

/// [x, y] lifted onto the sheet, [x, y, t] taken as is, or {"r": .., "phi": ..}.
template <>
inline HyperboloidPoint parse_point<HyperbolicPlane>(const HyperbolicPlane& space, const Json& j,
                                                     const std::string& ctx) {
    HyperboloidPoint p;
    if (j.is_object()) {
        p = HyperbolicPlane::from_polar(cfg::num(j, "r", ctx), cfg::num(j, "phi", ctx));
    } else {
        const auto v = cfg::numbers(j, ctx);
        if (v.size() == 2) p = HyperbolicPlane::lift(v[0], v[1]);
        else if (v.size() == 3) p = {v[0], v[1], v[2]};
        else throw ConfigError(ctx + ": hyperbolic point needs 2 or 3 coordinates");
    }
    try {
        space.validate(p);
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    return p;
}

/// [ray, r].
template <>
inline TreePoint parse_point<StarTree>(const StarTree& space, const Json& j, const std::string& ctx) {
    const auto v = cfg::numbers(j, ctx);
    if (v.size() != 2 || v[0] != std::floor(v[0])) throw ConfigError(ctx + ": tree point is [ray, r]");
    TreePoint p{static_cast<int>(v[0]), v[1]};
    try {
        space.validate(p);
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    return p;
}

template <class P>
Json point_to_json(const P& p);
template <>
inline Json point_to_json<Vec>(const Vec& p) { return Json(p); }
template <>
inline Json point_to_json<HyperboloidPoint>(const HyperboloidPoint& p) { return Json::array({p.x, p.y, p.t}); }
template <>
inline Json point_to_json<TreePoint>(const TreePoint& p) { return Json::array({p.ray, p.r}); }

// ---- sets and maps ------------------------------------------------------

template <GeodesicSpace S>
ConvexSet<S> parse_set(const S& space, const Json& j, const std::string& ctx) {
    const std::string k = cfg::kind(j, ctx);
    try {
        if (k == "whole") return ConvexSet<S>::whole(space);
        if (k == "ball")
            return ConvexSet<S>::ball(space, parse_point(space, cfg::req(j, "center", ctx), ctx + ".center"),
                                      cfg::num(j, "radius", ctx));
        if (k == "segment")
            return ConvexSet<S>::segment(space, parse_point(space, cfg::req(j, "a", ctx), ctx + ".a"),
                                         parse_point(space, cfg::req(j, "b", ctx), ctx + ".b"));
        if (k == "half_space" || k == "slab") {
            std::optional<double> upper;
            if (j.contains("upper")) upper = cfg::num(j.at("upper"), ctx + ".upper");
            return ConvexSet<S>::half_space(space, cfg::numbers(cfg::req(j, "normal", ctx), ctx + ".normal"),
                                            cfg::num(j, "lower", ctx), upper);
        }
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ": unknown set kind '" + k + "'");
}

/// Same map acting on a smaller domain.
template <GeodesicSpace S>
NonexpansiveMap<S> restrict_map(const NonexpansiveMap<S>& T, ConvexSet<S> domain) {
    return NonexpansiveMap<S>(std::move(domain), [T](const auto& x) { return T(x); }, T.kind(), T.known_fixed_point());
}

template <GeodesicSpace S>
NonexpansiveMap<S> parse_map(const S& space, const Json& j, const std::string& ctx) {
    const std::string k = cfg::kind(j, ctx);
    try {
        if (k == "identity") return identity_map(ConvexSet<S>::whole(space));
        if (k == "rotation")
            return rotation_map(space, parse_point(space, cfg::req(j, "center", ctx), ctx + ".center"),
                                cfg::num(j, "angle", ctx));
        if (k == "projection") return projection_map(parse_set(space, cfg::req(j, "set", ctx), ctx + ".set"));
        if (k == "averaged")
            return averaged(parse_map(space, cfg::req(j, "inner", ctx), ctx + ".inner"), cfg::num(j, "lambda", ctx));
        if (k == "compose") {
            const Json& ms = cfg::req(j, "maps", ctx);
            if (!ms.is_array() || ms.empty()) throw ConfigError(ctx + ".maps must be a nonempty array");
            std::vector<NonexpansiveMap<S>> maps;
            for (std::size_t i = 0; i < ms.size(); ++i)
                maps.push_back(parse_map(space, ms[i], ctx + ".maps[" + std::to_string(i) + "]"));
            return compose(std::move(maps));
        }
        if (k == "reflection")
            return point_reflection(space, parse_point(space, cfg::req(j, "center", ctx), ctx + ".center"));
        if (k == "scaling")
            return scaling_map(space, parse_point(space, cfg::req(j, "center", ctx), ctx + ".center"),
                               cfg::num(j, "factor", ctx));
        if (k == "translation") return translation_map(space, cfg::numbers(cfg::req(j, "vector", ctx), ctx + ".vector"));
        if (k == "permutation") {
            std::vector<std::size_t> perm;
            for (const auto& v : cfg::req(j, "perm", ctx)) perm.push_back(v.get<std::size_t>());
            return coordinate_permutation(space, std::move(perm));
        }
        if (k == "ray_permutation") {
            if constexpr (std::is_same_v<S, StarTree>) {
                std::vector<int> perm;
                for (const auto& v : cfg::req(j, "perm", ctx)) perm.push_back(v.get<int>());
                return ray_permutation(space, std::move(perm));
            } else {
                throw ConfigError(ctx + ": ray_permutation needs an rtree space");
            }
        }
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    } catch (const Json::exception& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ": unknown mapping kind '" + k + "'");
}

// ---- schedule and modulus -----------------------------------------------

inline ScalarSchedule parse_schedule(const Json& j, const std::string& ctx) {
    LambdaFamily lam;
    const Json& lj = cfg::req(j, "lambda", ctx);
    if (lj.is_number()) {
        lam.a = lam.b = lj.get<double>();
    } else {
        const std::string k = cfg::kind(lj, ctx + ".lambda");
        if (k == "constant") {
            lam.a = lam.b = cfg::num(lj, "value", ctx + ".lambda");
        } else if (k == "alternating") {
            lam.kind = LambdaFamily::Kind::alternating;
            lam.a = cfg::num_or(lj, "even", 0.75, ctx + ".lambda");
            lam.b = cfg::num_or(lj, "odd", 0.25, ctx + ".lambda");
        } else {
            throw ConfigError(ctx + ".lambda: unknown kind '" + k + "'");
        }
    }
    SFamily s;
    if (j.contains("s")) {
        const Json& sj = j.at("s");
        const std::string k = sj.is_number() ? "constant" : cfg::kind(sj, ctx + ".s");
        if (k == "zero") s = ScalarSchedule::s_zero();
        else if (k == "constant") s = ScalarSchedule::s_constant(sj.is_number() ? sj.get<double>() : cfg::num(sj, "value", ctx + ".s"));
        else if (k == "geometric") s = ScalarSchedule::s_geometric(cfg::num(sj, "c", ctx + ".s"), cfg::num(sj, "q", ctx + ".s"));
        else if (k == "inverse_square") s = ScalarSchedule::s_inverse_square(cfg::num_or(sj, "c", 1.0, ctx + ".s"));
        else throw ConfigError(ctx + ".s: unknown kind '" + k + "'");
    }
    std::optional<ScalarSchedule> sched;
    try {
        sched.emplace(lam, s);
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    if (j.contains("certificates")) {
        const Json& c = j.at("certificates");
        const std::string cx = ctx + ".certificates";
        if (c.contains("theta")) {
            const Json& t = c.at("theta");
            if (cfg::kind(t, cx + ".theta") != "linear") throw ConfigError(cx + ".theta: only kind 'linear' is supported");
            sched->set_theta(theta_linear(cfg::index(cfg::req(t, "factor", cx + ".theta"), cx + ".theta.factor")));
        }
        if (c.contains("gamma")) {
            const Json& g = c.at("gamma");
            if (cfg::kind(g, cx + ".gamma") != "constant") throw ConfigError(cx + ".gamma: only kind 'constant' is supported");
            sched->set_gamma(constant_cauchy(cfg::index(cfg::req(g, "value", cx + ".gamma"), cx + ".gamma.value")));
        }
        if (c.contains("delta")) {
            const Json& g = c.at("delta");
            if (cfg::kind(g, cx + ".delta") != "constant") throw ConfigError(cx + ".delta: only kind 'constant' is supported");
            sched->set_delta(constant_cauchy(cfg::index(cfg::req(g, "value", cx + ".delta"), cx + ".delta.value")));
        }
        if (c.contains("L")) {
            const Index L = cfg::index(c.at("L"), cx + ".L");
            const Index N0 = c.contains("N0") ? cfg::index(c.at("N0"), cx + ".N0") : 0;
            if (L < 1) throw ConfigError(cx + ".L must be >= 1");
            sched->set_L(L, N0);
        }
    }
    return *sched;
}

inline Modulus parse_modulus(const Json& j, const std::string& ctx) {
    const std::string k = cfg::kind(j, ctx);
    try {
        if (k == "cat0") return cat0_modulus();
        if (k == "lp") return lp_modulus(cfg::num(j, "p", ctx));
        if (k == "table") {
            std::vector<std::vector<double>> values;
            const Json& rows = cfg::req(j, "values", ctx);
            for (std::size_t i = 0; i < rows.size(); ++i)
                values.push_back(cfg::numbers(rows[i], ctx + ".values[" + std::to_string(i) + "]"));
            return table_modulus(cfg::numbers(cfg::req(j, "radii", ctx), ctx + ".radii"),
                                 cfg::numbers(cfg::req(j, "eps", ctx), ctx + ".eps"), std::move(values));
        }
    } catch (const InputError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ": unknown modulus kind '" + k + "'");
}

inline std::vector<Formula> parse_formulas(const Json& cfgj) {
    std::vector<Formula> out;
    if (!cfgj.contains("formulas"))
        return {Formula::h, Formula::psi, Formula::phi_afp, Formula::phi_main};
    for (const auto& f : cfgj.at("formulas")) {
        if (!f.is_string()) throw ConfigError("formulas: expected strings");
        auto parsed = formula_from_string(f.get<std::string>());
        if (!parsed) throw ConfigError("formulas: unknown formula '" + f.get<std::string>() + "'");
        out.push_back(*parsed);
    }
    if (out.empty()) throw ConfigError("formulas: at least one formula required");
    return out;
}

} // namespace ucw
