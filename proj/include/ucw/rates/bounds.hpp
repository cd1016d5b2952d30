#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "ucw/core/error.hpp"
#include "ucw/core/outward.hpp"
#include "ucw/iterate/certificates.hpp"
#include "ucw/iterate/schedule.hpp"
#include "ucw/modulus/modulus.hpp"
#include "ucw/rates/certificate.hpp"

namespace ucw {

/// Inputs shared by the main-theorem family of bounds.
struct RateInputs {
    double eps = 0.0;
    double b = 0.0;
    const Modulus* modulus = nullptr;
    std::optional<DivergenceRate> theta;
    std::optional<CauchyModulus> gamma;
    std::optional<Index> L;
    Index N0 = 0;
};

/// Which form of the constant-lambda bound to use. Auto picks the factored
/// form whenever the modulus has one.
enum class ConstLambdaVariant { automatic, general, factored };

namespace detail {

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError(std::string(what) + " must be positive and finite");
}

/// Compares eps with a threshold that is itself rounded: -1 strictly below,
/// +1 strictly above, 0 when the two cannot be told apart (both branches run).
inline int compare_threshold(double eps, double lo, double hi) {
    if (eps < lo) return -1;
    if (eps > hi) return 1;
    return 0;
}

/// Second argument of the modulus, rounded toward smaller eps. With outward
/// rounding this can only lower eta for moduli nondecreasing in eps.
inline double modulus_eps(const BoundArith& ar, double num, double den) {
    const double e = ar.div_down(num, den);
    if (e > 2.0) throw ModulusError("modulus queried with eps above 2 inside the main branch");
    return e;
}

inline Index theta_at(const DivergenceRate& theta, Index n) { return theta(n); }

} // namespace detail

/// Existence bound: some N in [k, h] has d(x_N, Ty_N) < eps.
/// h = theta(ceil((b+1)/(eps eta(b, eps/b))) + k) for eps <= 2b, k otherwise.
inline RateCertificate h_certificate(double eps, Index k, const Modulus& m, double b, const DivergenceRate& theta,
                                     Rounding mode = Rounding::outward) {
    detail::require_positive(eps, "eps");
    detail::require_positive(b, "b");
    const BoundArith ar(mode);
    RateCertificate c;
    c.formula = Formula::h;
    c.guarantee = Guarantee::exists;
    c.diagnostic = Diagnostic::x_ty;
    c.k = k;
    c.inputs = {{"eps", eps}, {"k", k}, {"modulus", m.describe()}, {"b", b}, {"theta", theta.describe()}};
    const double two_b_lo = ar.mul_down(2.0, b), two_b_hi = ar.mul_up(2.0, b);
    const int side = detail::compare_threshold(eps, two_b_lo, two_b_hi);
    Index main_value = 0;
    if (side <= 0) {
        const double eta = m.eval(b, detail::modulus_eps(ar, eps, b), mode);
        const Index inner = ceil_index(ar.div_up(ar.add_up(b, 1.0), ar.mul_down(eps, eta)));
        c.inner = inner;
        main_value = theta(checked_add(inner, k));
    }
    if (side < 0) {
        c.branch = Branch::main;
        c.bound = main_value;
    } else if (side > 0) {
        c.branch = Branch::otherwise;
        c.bound = k;
    } else {
        c.branch = Branch::boundary_max;
        c.bound = std::max(main_value, k);
    }
    return c;
}

inline Index h_bound(double eps, Index k, const Modulus& m, double b, const DivergenceRate& theta,
                     Rounding mode = Rounding::outward) {
    return h_certificate(eps, k, m, b, theta, mode).bound;
}

/// Psi(eps, k, ...) = h(eps/L, k + N0, ...): some N in [k, Psi] has d(x_N, Tx_N) < eps.
inline RateCertificate psi_certificate(double eps, Index k, const Modulus& m, double b, const DivergenceRate& theta,
                                       Index L, Index N0, Rounding mode = Rounding::outward) {
    detail::require_positive(eps, "eps");
    if (L < 1) throw InputError("L must be >= 1");
    const BoundArith ar(mode);
    RateCertificate c = h_certificate(ar.div_down(eps, static_cast<double>(L)), checked_add(k, N0), m, b, theta, mode);
    c.formula = Formula::psi;
    c.diagnostic = Diagnostic::x_tx;
    c.k = k;
    c.inputs = {{"eps", eps}, {"k", k},     {"modulus", m.describe()}, {"b", b}, {"theta", theta.describe()},
                {"L", L},     {"N0", N0}};
    return c;
}

inline Index psi_bound(double eps, Index k, const Modulus& m, double b, const DivergenceRate& theta, Index L,
                       Index N0, Rounding mode = Rounding::outward) {
    return psi_certificate(eps, k, m, b, theta, L, N0, mode).bound;
}

/// Approximate fixed point bound: Psi with k = 0.
inline RateCertificate phi_afp_certificate(double eps, const Modulus& m, double b, const DivergenceRate& theta,
                                           Index L, Index N0, Rounding mode = Rounding::outward) {
    RateCertificate c = psi_certificate(eps, 0, m, b, theta, L, N0, mode);
    c.formula = Formula::phi_afp;
    c.inputs.erase(c.inputs.begin() + 1);
    return c;
}

inline Index phi_afp(double eps, const Modulus& m, double b, const DivergenceRate& theta, Index L, Index N0,
                     Rounding mode = Rounding::outward) {
    return phi_afp_certificate(eps, m, b, theta, L, N0, mode).bound;
}

namespace detail {

inline void require_main_inputs(const RateInputs& in) {
    if (!in.modulus) throw ConfigError("rate inputs: modulus missing");
    if (!in.theta) throw ConfigError("rate inputs: divergence rate theta missing");
    if (!in.gamma) throw ConfigError("rate inputs: Cauchy modulus gamma missing");
    if (!in.L) throw ConfigError("rate inputs: L missing");
    if (*in.L < 1) throw InputError("L must be >= 1");
    require_positive(in.eps, "eps");
    require_positive(in.b, "b");
    if (!in.modulus->monotone()) throw HypothesisError("the main rate needs a monotone modulus");
}

/// theta(ceil(scale * L (b+1) / (eps * f(b, eps/(2Lb)))) + gamma(eps/8b) + N0 + 1) for eps <= 4Lb,
/// gamma(eps/8b) + N0 + 1 otherwise; f is eta (scale 2) or eta~ (scale 1).
inline RateCertificate main_family(const RateInputs& in, Formula formula, bool factored, Rounding mode) {
    require_main_inputs(in);
    const BoundArith ar(mode);
    const Modulus& m = *in.modulus;
    const double L = static_cast<double>(*in.L);
    RateCertificate c;
    c.formula = formula;
    c.guarantee = Guarantee::for_all;
    c.diagnostic = Diagnostic::x_tx;
    c.inputs = {{"eps", in.eps},       {"b", in.b},   {"modulus", m.describe()}, {"theta", in.theta->describe()},
                {"gamma", in.gamma->describe()}, {"L", *in.L}, {"N0", in.N0}};
    const Index tail = checked_add(checked_add((*in.gamma)(ar.div_down(in.eps, ar.mul_up(8.0, in.b))), in.N0), 1);
    const double lb = ar.mul_up(L, in.b);
    const double lb_lo = ar.mul_down(L, in.b);
    const int side = compare_threshold(in.eps, ar.mul_down(4.0, lb_lo), ar.mul_up(4.0, lb));
    Index main_value = 0;
    if (side <= 0) {
        const double e = modulus_eps(ar, in.eps, ar.mul_up(2.0, lb));
        const double f = factored ? m.tilde(in.b, e, mode) : m.eval(in.b, e, mode);
        const double num = ar.mul_up(factored ? L : 2.0 * L, ar.add_up(in.b, 1.0));
        const Index inner = ceil_index(ar.div_up(num, ar.mul_down(in.eps, f)));
        c.inner = inner;
        main_value = (*in.theta)(checked_add(inner, tail));
    }
    if (side < 0) {
        c.branch = Branch::main;
        c.bound = main_value;
    } else if (side > 0) {
        c.branch = Branch::otherwise;
        c.bound = tail;
    } else {
        c.branch = Branch::boundary_max;
        c.bound = std::max(main_value, tail);
    }
    return c;
}

} // namespace detail

/// For-all bound of the main theorem (general modulus).
inline RateCertificate phi_main(const RateInputs& in, Rounding mode = Rounding::outward) {
    return detail::main_family(in, Formula::phi_main, false, mode);
}

/// For-all bound using the factored modulus eta = eps * eta~.
inline RateCertificate phi_factored(const RateInputs& in, Rounding mode = Rounding::outward) {
    if (in.modulus && !in.modulus->factored())
        throw ConfigError("phi_factored: modulus '" + in.modulus->describe() + "' has no factored form");
    return detail::main_family(in, Formula::phi_factored, true, mode);
}

namespace detail {

inline void require_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw HypothesisError("constant lambda must lie in (0,1); lambda(1-lambda) = 0 admits no divergence rate");
}

/// M = delta(eps / (8 d_C (1-lambda))) + N0 + 1.
inline Index const_lambda_tail(const BoundArith& ar, double eps, double dC, double lambda, Index N0,
                               const CauchyModulus& delta) {
    const double den = ar.mul_up(ar.mul_up(8.0, dC), ar.add_up(1.0, -lambda));
    return checked_add(checked_add(delta(ar.div_down(eps, den)), N0), 1);
}

inline double lambda_q(const BoundArith& ar, double lambda) { return ar.mul_down(lambda, ar.add_down(1.0, -lambda)); }

inline RateCertificate finish_branches(RateCertificate c, int side, Index main_value, Index tail) {
    if (side < 0) {
        c.branch = Branch::main;
        c.bound = main_value;
    } else if (side > 0) {
        c.branch = Branch::otherwise;
        c.bound = tail;
    } else {
        c.branch = Branch::boundary_max;
        c.bound = std::max(main_value, tail);
    }
    return c;
}

} // namespace detail

/// Bounded-domain, constant-lambda bound:
/// ceil((1/(lambda(1-lambda))) * 2L(d_C+1) / (eps eta(d_C, eps/(2L d_C)))) + M for eps <= 4L d_C,
/// M otherwise; the factored form replaces 2L(d_C+1)/(eps eta) by L(d_C+1)/(eps eta~).
inline RateCertificate phi_const_lambda(double eps, const Modulus& m, double dC, double lambda, Index L, Index N0,
                                        const CauchyModulus& delta,
                                        ConstLambdaVariant variant = ConstLambdaVariant::automatic,
                                        Rounding mode = Rounding::outward) {
    detail::require_positive(eps, "eps");
    detail::require_positive(dC, "d_C");
    detail::require_lambda(lambda);
    if (L < 1) throw InputError("L must be >= 1");
    const bool factored = variant == ConstLambdaVariant::factored ||
                          (variant == ConstLambdaVariant::automatic && m.factored());
    if (factored && !m.factored()) throw ConfigError("phi_const_lambda: modulus '" + m.describe() + "' has no factored form");
    const BoundArith ar(mode);
    const double Ld = static_cast<double>(L);
    RateCertificate c;
    c.formula = Formula::phi_const_lambda;
    c.guarantee = Guarantee::for_all;
    c.inputs = {{"eps", eps},    {"modulus", m.describe()}, {"d_C", dC},
                {"lambda", lambda}, {"L", L},                {"N0", N0},
                {"delta", delta.describe()}, {"variant", std::string(factored ? "factored" : "general")}};
    const Index tail = detail::const_lambda_tail(ar, eps, dC, lambda, N0, delta);
    const double ld_hi = ar.mul_up(Ld, dC), ld_lo = ar.mul_down(Ld, dC);
    const int side = detail::compare_threshold(eps, ar.mul_down(4.0, ld_lo), ar.mul_up(4.0, ld_hi));
    Index main_value = 0;
    if (side <= 0) {
        const double e = detail::modulus_eps(ar, eps, ar.mul_up(2.0, ld_hi));
        const double f = factored ? m.tilde(dC, e, mode) : m.eval(dC, e, mode);
        const double num = ar.mul_up(factored ? Ld : 2.0 * Ld, ar.add_up(dC, 1.0));
        const double core = ar.div_up(num, ar.mul_down(eps, f));
        const Index inner = ceil_index(ar.div_up(core, detail::lambda_q(ar, lambda)));
        c.inner = inner;
        main_value = checked_add(inner, tail);
    }
    return detail::finish_branches(std::move(c), side, main_value, tail);
}

/// CAT(0) specialisation: ceil(D / eps^2) + M, D = 16 L^2 d_C (d_C+1) / (lambda(1-lambda)).
inline RateCertificate phi_cat0(double eps, double dC, double lambda, Index L, Index N0, const CauchyModulus& delta,
                                Rounding mode = Rounding::outward) {
    detail::require_positive(eps, "eps");
    detail::require_positive(dC, "d_C");
    detail::require_lambda(lambda);
    if (L < 1) throw InputError("L must be >= 1");
    const BoundArith ar(mode);
    const double Ld = static_cast<double>(L);
    RateCertificate c;
    c.formula = Formula::phi_cat0;
    c.guarantee = Guarantee::for_all;
    c.inputs = {{"eps", eps}, {"d_C", dC}, {"lambda", lambda}, {"L", L}, {"N0", N0}, {"delta", delta.describe()}};
    const Index tail = detail::const_lambda_tail(ar, eps, dC, lambda, N0, delta);
    const double ld_hi = ar.mul_up(Ld, dC), ld_lo = ar.mul_down(Ld, dC);
    const int side = detail::compare_threshold(eps, ar.mul_down(4.0, ld_lo), ar.mul_up(4.0, ld_hi));
    Index main_value = 0;
    if (side <= 0) {
        const double D = ar.div_up(ar.mul_up(ar.mul_up(ar.mul_up(16.0, ar.mul_up(Ld, Ld)), dC), ar.add_up(dC, 1.0)),
                                   detail::lambda_q(ar, lambda));
        const Index inner = ceil_index(ar.div_up(D, ar.mul_down(eps, eps)));
        c.inner = inner;
        main_value = checked_add(inner, tail);
    }
    return detail::finish_branches(std::move(c), side, main_value, tail);
}

/// KM rate: h(eps, 0, ...), a for-all bound because d(x_n, Tx_n) is
/// nonincreasing along KM orbits.
inline RateCertificate km_rate(double eps, const Modulus& m, double b, const DivergenceRate& theta,
                               Rounding mode = Rounding::outward) {
    RateCertificate c = h_certificate(eps, 0, m, b, theta, mode);
    c.formula = Formula::km_rate;
    c.guarantee = Guarantee::for_all;
    c.diagnostic = Diagnostic::x_tx;
    c.inputs.erase(c.inputs.begin() + 1);
    return c;
}

/// Schedule-aware KM rate; refuses schedules with s not identically zero.
inline RateCertificate km_rate(double eps, const Modulus& m, double b, const ScalarSchedule& sched,
                               Rounding mode = Rounding::outward) {
    if (!sched.s_is_zero()) throw HypothesisError("km_rate requires s_n = 0 for all n");
    if (!sched.theta()) throw HypothesisError("km_rate requires a divergence rate for sum lambda_n(1-lambda_n)");
    return km_rate(eps, m, b, *sched.theta(), mode);
}

} // namespace ucw
