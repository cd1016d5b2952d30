#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ucw/core/tolerance.hpp"
#include "ucw/iterate/orbit.hpp"
#include "ucw/modulus/modulus.hpp"

namespace ucw {

/// Indices into Lemma41Report::violations.
enum class Ineq : std::size_t {
    step_length,       ///< d(x_n, x_{n+1}) = lambda_n d(x_n, Ty_n)
    y_offset,          ///< d(y_n, x_n) = s_n d(x_n, Tx_n)
    ty_lower,          ///< (1 - s_n) d(x_n, Tx_n) <= d(x_n, Ty_n)
    ty_upper,          ///< d(x_n, Ty_n) <= (1 + s_n) d(x_n, Tx_n)
    y_residual,        ///< d(y_n, Ty_n) <= d(x_n, Tx_n)
    residual_growth,   ///< d(x_{n+1}, Tx_{n+1}) <= (1 + 2 s_n (1 - lambda_n)) d(x_n, Tx_n)
    fejer,             ///< d(x_{n+1}, p) <= d(x_n, p)
    residual_vs_p,     ///< d(x_n, Tx_n) <= 2 d(x_n, p)
    descent,           ///< main technical lemma, part (i)
    descent_factored,  ///< main technical lemma, part (ii)
    count
};

inline constexpr std::array<const char*, static_cast<std::size_t>(Ineq::count)> ineq_names{
    "step_length", "y_offset", "ty_lower", "ty_upper", "y_residual",
    "residual_growth", "fejer", "residual_vs_p", "descent", "descent_factored"};

struct Lemma41Violation {
    Ineq which;
    Index n;
    double lhs;
    double rhs;
};

struct Lemma41Report {
    Index steps_checked = 0;
    std::array<std::size_t, static_cast<std::size_t>(Ineq::count)> violations{};
    std::vector<Lemma41Violation> first;  ///< at most 32 entries
    std::size_t descent_checks = 0;       ///< steps where the descent preconditions held

    std::size_t total() const {
        std::size_t t = 0;
        for (auto v : violations) t += v;
        return t;
    }
    /// Violations of the chain and the Fejer part, without the descent spot checks.
    std::size_t chain_total() const {
        std::size_t t = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(Ineq::descent); ++i) t += violations[i];
        return t;
    }
    bool ok() const { return total() == 0; }
};

/// Streaming checker for the per-step Ishikawa inequalities. Feed records in
/// order; the residual-growth inequality compares consecutive records. When a
/// fixed point was supplied to the orbit, the Fejer property, d(x,Tx) <= 2 d(x,p),
/// and, given a monotone modulus, the descent estimate with
/// gamma = beta = beta~ = d(x_n,p) and a = d(x_n,Ty_n) are checked too.
class Lemma41Checker {
public:
    explicit Lemma41Checker(Tolerance tol = default_tolerance, const Modulus* modulus = nullptr)
        : tol_(tol), modulus_(modulus) {}

    template <class P>
    void feed(const StepRecord<P>& r) {
        ++rep_.steps_checked;
        if (prev_) check(Ineq::residual_growth, r.n - 1, r.d_x_tx, (1.0 + 2.0 * prev_->s * (1.0 - prev_->lambda)) * prev_->d_x_tx);
        check_eq(Ineq::step_length, r.n, r.d_x_next, r.lambda * r.d_x_ty);
        check_eq(Ineq::y_offset, r.n, r.d_x_y, r.s * r.d_x_tx);
        check(Ineq::ty_lower, r.n, (1.0 - r.s) * r.d_x_tx, r.d_x_ty);
        check(Ineq::ty_upper, r.n, r.d_x_ty, (1.0 + r.s) * r.d_x_tx);
        check(Ineq::y_residual, r.n, r.d_y_ty, r.d_x_tx);
        if (r.d_x_p && r.d_next_p) {
            const double dp = *r.d_x_p;
            check(Ineq::fejer, r.n, *r.d_next_p, dp);
            check(Ineq::residual_vs_p, r.n, r.d_x_tx, 2.0 * dp);
            const double a = r.d_x_ty;
            if (modulus_ && modulus_->monotone() && dp > 0.0 && a > 0.0) {
                const double e = std::min(2.0, a / dp);
                const double w = 2.0 * r.lambda * (1.0 - r.lambda);
                // Near convergence a/dp can underflow the modulus; such steps are skipped.
                double eta = 0.0, tilde = 0.0;
                try {
                    eta = modulus_->eval(dp, e);
                    if (modulus_->factored()) tilde = modulus_->tilde(dp, e);
                } catch (const ModulusError&) {
                    eta = -1.0;
                }
                if (eta > 0.0) {
                    ++rep_.descent_checks;
                    check(Ineq::descent, r.n, *r.d_next_p, dp - w * dp * eta);
                    if (modulus_->factored())
                        check(Ineq::descent_factored, r.n, *r.d_next_p, dp - w * a * tilde);
                }
            }
        }
        prev_ = Prev{r.s, r.lambda, r.d_x_tx};
    }

    const Lemma41Report& report() const noexcept { return rep_; }

private:
    struct Prev {
        double s, lambda, d_x_tx;
    };

    void check(Ineq which, Index n, double lhs, double rhs) {
        if (!tol_.le(lhs, rhs)) record(which, n, lhs, rhs);
    }
    void check_eq(Ineq which, Index n, double lhs, double rhs) {
        if (!tol_.eq(lhs, rhs)) record(which, n, lhs, rhs);
    }
    void record(Ineq which, Index n, double lhs, double rhs) {
        ++rep_.violations[static_cast<std::size_t>(which)];
        if (rep_.first.size() < 32) rep_.first.push_back({which, n, lhs, rhs});
    }

    Tolerance tol_;
    const Modulus* modulus_;
    std::optional<Prev> prev_;
    Lemma41Report rep_;
};

/// Checks a recorded orbit. The fixed-point parts run when the orbit was
/// generated with p.
template <class P>
Lemma41Report check_lemma41(const OrbitRecord<P>& orbit, Tolerance tol = default_tolerance,
                            const Modulus* modulus = nullptr) {
    Lemma41Checker c(tol, modulus);
    for (const auto& r : orbit.steps) c.feed(r);
    return c.report();
}

} // namespace ucw
