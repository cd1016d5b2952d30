// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/analysis.hpp"
#include "ucw/harness.hpp"
#include "ucw/iterate.hpp"
#include "ucw/mappings.hpp"
#include "ucw/modulus.hpp"
#include "ucw/rates.hpp"
#include "ucw/spaces.hpp"

using namespace ucw;

namespace {

const std::string source_dir = UCW_SOURCE_DIR;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (ok) detail << "first failure: " << why << "; ";
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---- 1. axioms

template <class S>
std::size_t axiom_failures(const S& space, int trials, std::uint64_t seed, double scale) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Tolerance tol{1e-9, 1e-9};
    const auto o = space.origin();
    std::size_t bad = 0;
    for (int k = 0; k < trials; ++k) {
        const auto x = space.random_point(rng, o, scale), y = space.random_point(rng, o, scale);
        const auto z = space.random_point(rng, o, scale), w = space.random_point(rng, o, scale);
        const double t = u(rng), t2 = u(rng);
        const auto m = space.combine(x, y, t);
        const double dxy = space.dist(x, y);
        bool ok = tol.le(space.dist(z, m), (1 - t) * space.dist(z, x) + t * space.dist(z, y));
        ok = ok && tol.eq(space.dist(m, space.combine(x, y, t2)), std::fabs(t - t2) * dxy);
        ok = ok && tol.eq(space.dist(m, space.combine(y, x, 1 - t)), 0.0);
        ok = ok && tol.le(space.dist(m, space.combine(z, w, t)), (1 - t) * space.dist(x, z) + t * space.dist(y, w));
        ok = ok && tol.eq(space.dist(x, m), t * dxy) && tol.eq(space.dist(y, m), (1 - t) * dxy);
        bad += !ok;
    }
    return bad;
}

Outcome axioms() {
    Outcome r;
    const auto t0 = Clock::now();
    const int n = 10000;
    const std::size_t e = axiom_failures(EuclideanSpace(2), n, 1, 5.0);
    const std::size_t l = axiom_failures(LpSpace(3, 3.0), n, 2, 5.0);
    const std::size_t h = axiom_failures(HyperbolicPlane(), n, 3, 3.0);
    const std::size_t t = axiom_failures(StarTree(5), n, 4, 5.0);
    const double secs = seconds_since(t0);
    r.expect(e + l + h + t == 0, "axiom violations");
    r.expect(secs < 30.0, "runtime over 30 s");
    r.detail << n << " tuples per space; failures R2=" << e << " l3=" << l << " H2=" << h << " tree5=" << t
             << "; " << secs << " s";
    return r;
}

// ---- 2. moduli

Outcome moduli() {
    Outcome r;
    const auto t0 = Clock::now();
    const std::size_t n = 10000;
    const Modulus cat0 = cat0_modulus();
    std::size_t total = 0;
    auto run = [&](const std::string& name, const auto& rep) {
        total += rep.violations;
        r.expect(rep.ok(), name + " modulus violations");
        r.expect(rep.trials >= n, name + " too few trials");
    };
    run("cat0/R2", verify_modulus(EuclideanSpace(2), cat0, n, 11));
    run("cat0/H2", verify_modulus(HyperbolicPlane(), cat0, n, 12));
    run("cat0/tree5", verify_modulus(StarTree(5), cat0, n, 13));
    for (double p : {2.0, 3.0, 4.0}) run("lp" + std::to_string(int(p)), verify_modulus(LpSpace(3, p), lp_modulus(p), n, 14));
    std::size_t g = 0;
    for (const auto& rep : {verify_groetsch(EuclideanSpace(2), cat0, n, 21), verify_groetsch(HyperbolicPlane(), cat0, n, 22),
                            verify_groetsch(StarTree(5), cat0, n, 23), verify_groetsch(LpSpace(3, 3.0), lp_modulus(3), n, 24)}) {
        for (auto v : rep.violations) g += v;
        r.expect(rep.ok(), "Groetsch part violated");
    }
    const double secs = seconds_since(t0);
    r.expect(secs < 60.0, "runtime over 60 s");
    r.detail << "6 space/modulus pairs x " << n << " trials, violations=" << total << "; Groetsch violations=" << g
             << "; " << secs << " s";
    return r;
}

// ---- 3. per-step chain along the suite orbits

Outcome chain() {
    Outcome r;
    const auto files = suite_configs(source_dir + "/configs/suite");
    std::size_t total = 0, steps = 0, descent = 0;
    for (const auto& f : files) {
        try {
            const Json cfg = load_config(f);
            with_space(cfg, [&](const auto& space) {
                const auto e = detail::prepare(space, cfg, RunOptions{});
                const auto orbit = ishikawa_orbit(e.T, e.x0, e.sched, 1000, e.p);
                const auto rep = check_lemma41(orbit, Tolerance{1e-9, 1e-9}, &e.modulus);
                total += rep.total();
                steps += rep.steps_checked;
                descent += rep.descent_checks;
                r.expect(rep.ok(), e.id + " has chain violations");
                r.expect(e.p.has_value(), e.id + " has no fixed point for the Fejer check");
                return 0;
            });
        } catch (const std::exception& ex) {
            r.fail(f + ": " + ex.what());
        }
    }
    r.expect(files.size() == 12, "expected 12 suite configs");
    r.detail << files.size() << " orbits, " << steps << " steps checked, violations=" << total
             << ", descent spot checks=" << descent;
    return r;
}

// ---- 4. certificate soundness on the bundled suite

Outcome soundness() {
    Outcome r;
    const auto t0 = Clock::now();
    const auto s = run_suite(source_dir + "/configs/suite");
    std::size_t rows = 0, failed = 0;
    Index largest = 0;
    for (const auto& e : s.entries) {
        if (!e.report) {
            r.fail(e.path + ": " + e.error);
            continue;
        }
        const auto& rep = *e.report;
        r.expect(rep.validation.ok, rep.experiment_id + " failed validation");
        bool has_main = false;
        for (const auto& row : rep.rows) {
            ++rows;
            largest = std::max(largest, row.bound);
            if (!row.passed) {
                ++failed;
                r.fail(rep.experiment_id + " " + row.formula + " eps=" + std::to_string(row.epsilon));
            }
            if (row.formula == "phi_main") {
                has_main = true;
                r.expect(row.tail_ok == true && rep.horizon >= row.bound + 100, rep.experiment_id + " phi_main tail");
            }
            if (row.formula == "km_rate") r.expect(row.tail_ok == true, rep.experiment_id + " km_rate tail");
            if (row.formula == "h" || row.formula == "psi")
                r.expect(row.diagnostic == (row.formula == "h" ? "d(x,Ty)" : "d(x,Tx)"), rep.experiment_id + " " + row.formula + " diagnostic");
        }
        r.expect(has_main, rep.experiment_id + " lacks phi_main");
    }
    const double secs = seconds_since(t0);
    r.expect(s.all_passed(), "suite did not pass");
    r.expect(secs < 300.0, "runtime over 5 min");
    r.detail << s.passed() << "/" << s.entries.size() << " experiments, " << rows - failed << "/" << rows
             << " rows, largest bound " << largest << "; " << secs << " s";
    return r;
}

// ---- 5. goldens

Outcome goldens() {
    Outcome r;
    const Modulus m = cat0_modulus();
    const auto theta = theta_linear(4);
    const Index cat0 = phi_cat0(0.1, 1, 0.5, 1, 0, zero_modulus()).bound;
    const Index h = h_bound(1, 0, m, 1, theta);
    const Index psi = psi_bound(1, 0, m, 1, theta, 2, 3);
    r.expect(cat0 == 12801, "phi_cat0");
    r.expect(h == 64, "h_bound");
    r.expect(psi == 524, "psi_bound");
    r.detail << "phi_cat0=" << cat0 << " (12801) h=" << h << " (64) psi=" << psi << " (524)";
    return r;
}

// ---- 6. consistency sweep

Outcome consistency() {
    Outcome r;
    Rng rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Modulus cat0 = cat0_modulus(), l3 = lp_modulus(3);
    std::size_t points = 0, le_fail = 0, eq_fail = 0;
    for (int k = 0; k < 100; ++k) {
        const double b = 0.05 + 5 * u(rng);
        const Index L = 1 + static_cast<Index>(3 * u(rng));
        const double eps = 4.0 * static_cast<double>(L) * b * (0.001 + 0.999 * u(rng));
        const double lambda = 0.05 + 0.9 * u(rng), q = 0.1 + 0.8 * u(rng);
        const Index N0 = static_cast<Index>(5 * u(rng));
        const bool s_zero = u(rng) < 0.3;
        const auto s = ScalarSchedule::constant(lambda, s_zero ? ScalarSchedule::s_zero() : ScalarSchedule::s_geometric(0.5, q));
        for (const Modulus* mod : {&cat0, &l3}) {
            RateInputs in;
            in.eps = eps;
            in.b = b;
            in.modulus = mod;
            in.theta = *s.theta();
            in.gamma = *s.gamma();
            in.L = *s.L();
            in.N0 = s.N0();
            le_fail += phi_factored(in).bound > phi_main(in).bound;
        }
        const auto delta = *s.delta();
        eq_fail += phi_cat0(eps, b, lambda, L, N0, delta).bound !=
                   phi_const_lambda(eps, cat0, b, lambda, L, N0, delta, ConstLambdaVariant::factored).bound;
        ++points;
    }
    r.expect(le_fail == 0, "factored above main");
    r.expect(eq_fail == 0, "phi_cat0 differs from const-lambda with the CAT(0) modulus");
    r.detail << points << " points; factored>main: " << le_fail << "; cat0 mismatches: " << eq_fail;
    return r;
}

// ---- 7. asymptotic centers

Vec grid_center(const std::vector<Vec>& pts, double pitch) {
    double lo0 = 1e9, hi0 = -1e9, lo1 = 1e9, hi1 = -1e9;
    for (const auto& p : pts) {
        lo0 = std::min(lo0, p[0]), hi0 = std::max(hi0, p[0]);
        lo1 = std::min(lo1, p[1]), hi1 = std::max(hi1, p[1]);
    }
    Vec best{0, 0};
    double value = 1e18;
    const auto n0 = static_cast<long>((hi0 - lo0) / pitch) + 1, n1 = static_cast<long>((hi1 - lo1) / pitch) + 1;
    for (long i = 0; i <= n0; ++i) {
        const double a = lo0 + static_cast<double>(i) * pitch;
        for (long j = 0; j <= n1; ++j) {
            const double c = lo1 + static_cast<double>(j) * pitch;
            double rad = 0;
            for (const auto& p : pts) rad = std::max(rad, std::hypot(a - p[0], c - p[1]));
            if (rad < value) value = rad, best = {a, c};
        }
    }
    return best;
}

Outcome centers() {
    Outcome r;
    const EuclideanSpace e(2);
    const auto whole = ConvexSet<EuclideanSpace>::whole(e);
    const double pitch = 1e-3;
    Rng rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    int made = 0;
    while (made < 10) {
        const double A = 50 + 15 * u(rng), B = 50 + 15 * u(rng), C = 180 - A - B;
        if (C < 50 || C > 65) continue;
        // vertices on a circle: the central angle opposite a vertex angle is twice that angle
        const double deg = std::numbers::pi / 180, rot = 2 * std::numbers::pi * u(rng), rad = 0.3 + 0.7 * u(rng);
        const Vec c{u(rng) - 0.5, u(rng) - 0.5};
        const double a0 = rot, a1 = a0 + 2 * C * deg, a2 = a1 + 2 * A * deg;
        std::vector<Vec> pts;
        for (double a : {a0, a1, a2}) pts.push_back({c[0] + rad * std::cos(a), c[1] + rad * std::sin(a)});
        const auto res = asymptotic_center(BoundedSequence<EuclideanSpace>(e, pts, 0), whole);
        const double d = e.dist(res.center, grid_center(pts, pitch));
        worst = std::max(worst, d);
        r.expect(d <= 2 * pitch, "grid oracle mismatch");
        ++made;
    }
    const auto cst = asymptotic_center(BoundedSequence<EuclideanSpace>(e, std::vector<Vec>(6, Vec{0.3, -0.4}), 0), whole);
    r.expect(e.dist(cst.center, {0.3, -0.4}) <= 1e-6 && std::fabs(cst.radius) <= 1e-6, "constant sequence");
    std::vector<Vec> alt;
    for (int i = 0; i < 10; ++i) alt.push_back(i % 2 ? Vec{1, 0} : Vec{-1, 0});
    const auto al = asymptotic_center(BoundedSequence<EuclideanSpace>(e, alt, 0), whole);
    r.expect(e.dist(al.center, {0, 0}) <= 1e-6 && std::fabs(al.radius - 1) <= 1e-6, "alternating sequence");
    r.detail << made << " triangles, worst distance to grid minimiser " << worst << " (limit " << 2 * pitch
             << "); closed forms within 1e-6";
    return r;
}

// ---- 8. probe verdicts

Outcome probes() {
    Outcome r;
    const EuclideanSpace e(2);
    const HyperbolicPlane h;
    const StarTree t(4);
    const LpSpace l(3, 3.0);
    std::size_t n = 0;
    auto expect_bounded = [&](const std::string& name, const auto& T, const auto& x0) {
        ++n;
        const auto rep = fixed_point_probe(T, x0, 4000, 50.0);
        r.expect(rep.verdict == ProbeVerdict::bounded_with_approx_fixed_points,
                 name + " verdict " + to_string(rep.verdict));
    };
    const auto ball = ConvexSet<EuclideanSpace>::ball(e, {0, 0}, 1.0);
    expect_bounded("identity", identity_map(ConvexSet<EuclideanSpace>::whole(e)), Vec{2, 1});
    expect_bounded("projection", projection_map(ball), Vec{2, 1});
    expect_bounded("rotation/R2", rotation_map(e, {0.5, 0.5}, 2.0), Vec{2, 1});
    expect_bounded("rotation/H2", rotation_map(h, HyperbolicPlane::from_polar(0.5, 1.0), 1.3), HyperbolicPlane::from_polar(1.5, 0.0));
    expect_bounded("point_reflection", point_reflection(e, {0.1, 0.2}), Vec{2, 1});
    expect_bounded("scaling", scaling_map(h, h.origin(), 0.5), HyperbolicPlane::from_polar(2.0, 0.4));
    expect_bounded("averaged", averaged(rotation_map(e, {0, 0}, 2.5), 0.6), Vec{2, 1});
    expect_bounded("compose", compose<EuclideanSpace>({rotation_map(e, {0, 0}, 1.0), projection_map(ball)}), Vec{2, 1});
    expect_bounded("coordinate_permutation", coordinate_permutation(l, {2, 0, 1}), Vec{0.3, -0.2, 0.9});
    expect_bounded("ray_permutation", ray_permutation(t, {1, 2, 3, 0}), TreePoint{2, 1.5});
    const auto tr = fixed_point_probe(translation_map(e, {1.0, 0.0}), Vec{0, 0}, 4000, 50.0);
    r.expect(!tr.picard.bounded, "translation Picard orbit stayed bounded");
    r.expect(tr.verdict == ProbeVerdict::unbounded_without_approx_fixed_points,
             std::string("translation verdict ") + to_string(tr.verdict));
    r.detail << n << " fixed-point maps bounded; translation Picard max distance " << tr.picard.max_distance;
    return r;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"axioms", axioms},
        {"moduli", moduli},
        {"per-step chain", chain},
        {"certificate soundness", soundness},
        {"formula goldens", goldens},
        {"consistency", consistency},
        {"asymptotic center oracle", centers},
        {"probe diagnostics", probes},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& ex) {
            o.fail(std::string("exception: ") + ex.what());
        }
        std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
