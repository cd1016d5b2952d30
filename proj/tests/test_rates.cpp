#include <gtest/gtest.h>

#include <cmath>

#include "ucw/rates.hpp"
#include "ucw/spaces.hpp"

using namespace ucw;

namespace {

RateInputs main_inputs(double eps, double b, const Modulus& m, Index theta_factor = 4, Index L = 1, Index N0 = 0) {
    RateInputs in;
    in.eps = eps;
    in.b = b;
    in.modulus = &m;
    in.theta = theta_linear(theta_factor);
    in.gamma = zero_modulus();
    in.L = L;
    in.N0 = N0;
    return in;
}

// Random admissible inputs: constant lambda with a geometric or vanishing s.
struct Draw {
    double eps, b, lambda, q;
    Index L, N0;
    bool s_zero;
};

Draw draw(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Draw d;
    d.b = 0.05 + 5 * u(rng);
    d.L = 1 + static_cast<Index>(3 * u(rng));
    d.eps = 4.0 * static_cast<double>(d.L) * d.b * (0.001 + 0.999 * u(rng));
    d.lambda = 0.05 + 0.9 * u(rng);
    d.q = 0.1 + 0.8 * u(rng);
    d.N0 = static_cast<Index>(5 * u(rng));
    d.s_zero = u(rng) < 0.3;
    return d;
}

ScalarSchedule schedule_for(const Draw& d) {
    return ScalarSchedule::constant(d.lambda, d.s_zero ? ScalarSchedule::s_zero() : ScalarSchedule::s_geometric(0.5, d.q));
}

} // namespace

TEST(HBound, Goldens) {
    const Modulus m = cat0_modulus();
    const auto theta = theta_linear(4);
    EXPECT_EQ(h_bound(3, 5, m, 1, theta), 5u);
    const auto c = h_certificate(1, 0, m, 1, theta);
    EXPECT_EQ(c.bound, 64u);
    EXPECT_EQ(c.inner, 16u);
    EXPECT_EQ(c.branch, Branch::main);
    EXPECT_EQ(c.guarantee, Guarantee::exists);
    EXPECT_EQ(c.diagnostic, Diagnostic::x_ty);
}

TEST(HBound, BoundaryTakesLargerBranch) {
    const Modulus m = cat0_modulus();
    const auto c = h_certificate(2, 0, m, 1, theta_linear(4));
    EXPECT_EQ(c.bound, 8u);
    EXPECT_EQ(c.branch, Branch::boundary_max);
    // with k large the otherwise branch wins at the boundary
    EXPECT_EQ(h_bound(2, 100, m, 1, theta_linear(1)), 102u);
}

TEST(PsiBound, Goldens) {
    const Modulus m = cat0_modulus();
    const auto theta = theta_linear(4);
    EXPECT_EQ(psi_bound(1, 0, m, 1, theta, 2, 3), 524u);
    EXPECT_EQ(psi_bound(0.37, 2, m, 1.3, theta, 1, 0), h_bound(0.37, 2, m, 1.3, theta));
    EXPECT_EQ(psi_bound(50, 2, m, 1, theta, 2, 3), 5u);
    EXPECT_EQ(psi_certificate(1, 0, m, 1, theta, 2, 3).diagnostic, Diagnostic::x_tx);
}

TEST(PhiAfp, Goldens) {
    const Modulus m = cat0_modulus();
    const auto theta = theta_linear(4);
    EXPECT_EQ(phi_afp(1, m, 1, theta, 2, 3), 524u);
    EXPECT_EQ(phi_afp(10, m, 1, theta, 1, 0), 0u);
    Rng rng(1);
    for (int k = 0; k < 200; ++k) {
        const Draw d = draw(rng);
        EXPECT_EQ(phi_afp(d.eps, m, d.b, theta, d.L, d.N0), psi_bound(d.eps, 0, m, d.b, theta, d.L, d.N0));
    }
}

TEST(PhiMain, Goldens) {
    const Modulus m = cat0_modulus();
    const auto c = phi_main(main_inputs(1, 1, m));
    EXPECT_EQ(c.bound, 516u);
    EXPECT_EQ(c.inner, 128u);
    EXPECT_EQ(c.guarantee, Guarantee::for_all);
    const auto o = phi_main(main_inputs(5, 1, m));
    EXPECT_EQ(o.bound, 1u);
    EXPECT_EQ(o.branch, Branch::otherwise);
}

TEST(PhiMain, MissingInputsAreConfigErrors) {
    const Modulus m = cat0_modulus();
    auto in = main_inputs(1, 1, m);
    in.gamma.reset();
    EXPECT_THROW(phi_main(in), ConfigError);
    in = main_inputs(1, 1, m);
    in.modulus = nullptr;
    EXPECT_THROW(phi_main(in), ConfigError);
    in = main_inputs(1, 1, m);
    in.theta.reset();
    EXPECT_THROW(phi_factored(in), ConfigError);
}

TEST(PhiFactored, Goldens) {
    const Modulus m = cat0_modulus();
    EXPECT_EQ(phi_factored(main_inputs(1, 1, m)).bound, 132u);
    EXPECT_EQ(phi_factored(main_inputs(5, 1, m)).bound, phi_main(main_inputs(5, 1, m)).bound);
    const Modulus t = table_modulus({10}, {0.01, 2}, {{0.001, 0.5}});
    EXPECT_THROW(phi_factored(main_inputs(1, 1, t)), ConfigError);
}

TEST(PhiConstLambda, Goldens) {
    const Modulus m = cat0_modulus();
    const auto g = phi_const_lambda(1, m, 1, 0.5, 1, 0, zero_modulus(), ConstLambdaVariant::general);
    EXPECT_EQ(g.bound, 513u);
    // the factored form halves the inner term: ceil(4 * 1*2 / (1 * 1/16)) + 1
    EXPECT_EQ(phi_const_lambda(1, m, 1, 0.5, 1, 0, zero_modulus()).bound, 129u);
    EXPECT_EQ(phi_const_lambda(1, m, 1, 0.5, 1, 0, zero_modulus(), ConstLambdaVariant::factored).bound, 129u);
    EXPECT_EQ(phi_const_lambda(5, m, 1, 0.5, 1, 0, zero_modulus()).bound, 1u);
    EXPECT_THROW(phi_const_lambda(1, m, 1, 1.0, 1, 0, zero_modulus()), HypothesisError);
    EXPECT_THROW(phi_const_lambda(1, m, 1, 0.0, 1, 0, zero_modulus()), HypothesisError);
}

TEST(PhiCat0, Goldens) {
    EXPECT_EQ(phi_cat0(0.1, 1, 0.5, 1, 0, zero_modulus()).bound, 12801u);
    const auto o = phi_cat0(5, 1, 0.5, 1, 0, zero_modulus());
    EXPECT_EQ(o.bound, 1u);
    EXPECT_EQ(o.branch, Branch::otherwise);
    EXPECT_THROW(phi_cat0(0.1, 1, 1.0, 1, 0, zero_modulus()), HypothesisError);
}

TEST(KmRate, Goldens) {
    const Modulus m = cat0_modulus();
    const auto c = km_rate(1, m, 1, theta_linear(4));
    EXPECT_EQ(c.bound, 64u);
    EXPECT_EQ(c.guarantee, Guarantee::for_all);
    EXPECT_EQ(km_rate(3, m, 1, theta_linear(4)).bound, 0u);
    EXPECT_EQ(km_rate(1, m, 1, ScalarSchedule::constant(0.5)).bound, 64u);
    EXPECT_THROW(km_rate(1, m, 1, ScalarSchedule::constant(0.5, ScalarSchedule::s_inverse_square())), HypothesisError);
}

TEST(Consistency, FactoredNeverExceedsMain) {
    const Modulus cat0 = cat0_modulus(), l3 = lp_modulus(3);
    Rng rng(2);
    for (int k = 0; k < 100; ++k) {
        const Draw d = draw(rng);
        const auto s = schedule_for(d);
        for (const Modulus* m : {&cat0, &l3}) {
            RateInputs in = main_inputs(d.eps, d.b, *m);
            in.theta = *s.theta();
            in.gamma = *s.gamma();
            in.L = *s.L();
            in.N0 = s.N0();
            EXPECT_LE(phi_factored(in).bound, phi_main(in).bound);
        }
    }
}

TEST(Consistency, Cat0MatchesConstLambdaWithCat0Modulus) {
    const Modulus m = cat0_modulus();
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const Draw d = draw(rng);
        const auto delta = d.s_zero ? zero_modulus() : *schedule_for(d).delta();
        EXPECT_EQ(phi_cat0(d.eps, d.b, d.lambda, d.L, d.N0, delta).bound,
                  phi_const_lambda(d.eps, m, d.b, d.lambda, d.L, d.N0, delta, ConstLambdaVariant::factored).bound)
            << "eps=" << d.eps << " b=" << d.b << " lambda=" << d.lambda;
    }
}

TEST(Consistency, ConstLambdaAgainstMainWithDerivedCertificates) {
    // phi_main(theta = ceil(n/q), gamma = delta(./(1-lambda))) = ceil((ceil(A) + t)/q) while
    // phi_const_lambda = ceil(A/q) + t, so 0 <= main - const <= (t + 1)/q + 1 - t.
    const Modulus m = cat0_modulus();
    Rng rng(4);
    int compared = 0;
    for (int k = 0; k < 100; ++k) {
        const Draw d = draw(rng);
        const auto s = schedule_for(d);
        RateInputs in = main_inputs(d.eps, d.b, m);
        in.theta = *s.theta();
        in.gamma = *s.gamma();
        in.L = *s.L();
        in.N0 = s.N0();
        const auto main = phi_main(in);
        const auto cl = phi_const_lambda(d.eps, m, d.b, d.lambda, *s.L(), s.N0(), *s.delta(), ConstLambdaVariant::general);
        // the draw targets d.L; the schedule's own L may put eps past the threshold
        if (main.branch != Branch::main || cl.branch != Branch::main) continue;
        ++compared;
        const double q = d.lambda * (1 - d.lambda);
        const double t = static_cast<double>(cl.bound - *cl.inner);
        EXPECT_LE(cl.bound, main.bound);
        // one extra index for the outward rounding of q
        EXPECT_LE(static_cast<double>(main.bound - cl.bound), (t + 1) / q + 1 - t + 1);
    }
    EXPECT_GE(compared, 50);
}

TEST(Monotonicity, BoundsNonincreasingInEps) {
    const Modulus cat0 = cat0_modulus(), l4 = lp_modulus(4);
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const Draw d = draw(rng);
        const double e2 = d.eps * (1 + 3 * u(rng));
        const auto s = schedule_for(d);
        const auto theta = *s.theta();
        for (const Modulus* m : {&cat0, &l4}) {
            EXPECT_GE(h_bound(d.eps, 0, *m, d.b, theta), h_bound(e2, 0, *m, d.b, theta));
            EXPECT_GE(psi_bound(d.eps, 1, *m, d.b, theta, d.L, d.N0), psi_bound(e2, 1, *m, d.b, theta, d.L, d.N0));
            RateInputs a = main_inputs(d.eps, d.b, *m), b = main_inputs(e2, d.b, *m);
            for (RateInputs* in : {&a, &b}) {
                in->theta = theta;
                in->gamma = *s.gamma();
                in->L = *s.L();
                in->N0 = s.N0();
            }
            EXPECT_GE(phi_main(a).bound, phi_main(b).bound);
            EXPECT_GE(phi_factored(a).bound, phi_factored(b).bound);
            EXPECT_GE(phi_const_lambda(d.eps, *m, d.b, d.lambda, d.L, d.N0, *s.delta()).bound,
                      phi_const_lambda(e2, *m, d.b, d.lambda, d.L, d.N0, *s.delta()).bound);
        }
        EXPECT_GE(phi_cat0(d.eps, d.b, d.lambda, d.L, d.N0, *s.delta()).bound,
                  phi_cat0(e2, d.b, d.lambda, d.L, d.N0, *s.delta()).bound);
    }
}

TEST(Rounding, OutwardIsConservativeAndClose) {
    const Modulus cat0 = cat0_modulus(), l3 = lp_modulus(3);
    Rng rng(6);
    int differ = 0;
    for (int k = 0; k < 1000; ++k) {
        const Draw d = draw(rng);
        const auto s = schedule_for(d);
        const Modulus& m = (k & 1) ? cat0 : l3;
        RateInputs in = main_inputs(d.eps, d.b, m);
        in.theta = theta_linear(1);  // identity theta so the comparison sees the raw ceiling
        in.gamma = *s.gamma();
        in.L = *s.L();
        in.N0 = s.N0();
        const auto up = phi_main(in, Rounding::outward), near = phi_main(in, Rounding::nearest);
        ASSERT_GE(up.bound, near.bound);
        ASSERT_LE(up.bound - near.bound, 1u);
        const Index hu = h_bound(d.eps, 0, m, d.b, theta_linear(1), Rounding::outward);
        const Index hn = h_bound(d.eps, 0, m, d.b, theta_linear(1), Rounding::nearest);
        ASSERT_GE(hu, hn);
        ASSERT_LE(hu - hn, 1u);
        const Index cu = phi_cat0(d.eps, d.b, d.lambda, d.L, d.N0, *s.delta(), Rounding::outward).bound;
        const Index cn = phi_cat0(d.eps, d.b, d.lambda, d.L, d.N0, *s.delta(), Rounding::nearest).bound;
        ASSERT_GE(cu, cn);
        ASSERT_LE(cu - cn, 1u);
        differ += up.bound != near.bound;
    }
    RecordProperty("outward_differs", differ);
}

TEST(Certificates, JsonNames) {
    EXPECT_EQ(formula_from_string("phi_main"), Formula::phi_main);
    EXPECT_FALSE(formula_from_string("phi_bogus").has_value());
    EXPECT_STREQ(to_string(Guarantee::for_all), "for_all");
}
