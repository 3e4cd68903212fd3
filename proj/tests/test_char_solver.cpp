#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wavelab/char_solver.hpp"
#include "wavelab/data_families.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/scenario.hpp"

using namespace wavelab;

namespace {

constexpr double pi = std::numbers::pi;

ProblemSpec plain_spec(double a, double p, double horizon,
                       CoefficientField c = CoefficientField::zero(),
                       CoefficientField a1 = CoefficientField::zero()) {
    return ProblemSpec(a, p, Orientation::LeftSmoothing, std::move(c), std::move(a1), horizon);
}

InitialData make_random_data(int n, std::uint64_t seed) {
    const auto w0 = DataFamily::random(seed, 2.0).sample(n);
    const auto w1 = DataFamily::random(seed + 1, 1.0).sample(n);
    return reduce_to_first_order(w0, w1, 1.0);
}

GridState raw_state(std::vector<double> w, std::vector<double> u) {
    GridState s;
    s.n_cells = static_cast<int>(w.size()) - 1;
    s.t = 0.0;
    s.w = std::move(w);
    s.u = std::move(u);
    return s;
}

} // namespace

TEST_CASE("init_state applies the boundary overwrite") {
    SUBCASE("zero data stays zero") {
        const std::vector<double> z(11, 0.0);
        const auto data = reduce_to_first_order(z, z, 1.0);
        const GridState s = init_state(plain_spec(1.0, 0.3, 1.0), data, 10);
        for (int j = 0; j <= 10; ++j) {
            CHECK(s.w[j] == 0.0);
            CHECK(s.u[j] == 0.0);
        }
    }
    SUBCASE("u endpoint forced to zero") {
        std::vector<double> w0(11, 0.0), w1(11, 0.0);
        w1[10] = 0.3;   // phi2(1) = 0.3
        const auto data = reduce_to_first_order(w0, w1, 1.0);
        const GridState s = init_state(plain_spec(1.0, 0.0, 1.0), data, 10);
        CHECK(s.u[10] == 0.0);
    }
    SUBCASE("w endpoint tied to p u(0)") {
        std::vector<double> w0(11, 7.0), w1(11, 0.0);
        w1[0] = 0.5;   // constant w0 so phi2(0) = w1(0)
        const auto data = reduce_to_first_order(w0, w1, 1.0);
        const GridState s = init_state(plain_spec(1.0, 2.0, 1.0), data, 10);
        CHECK(s.u[0] == 0.5);
        CHECK(s.w[0] == 1.0);
    }
    SUBCASE("sample count mismatch") {
        const std::vector<double> z(11, 0.0);
        const auto data = reduce_to_first_order(z, z, 1.0);
        CHECK_THROWS_AS(init_state(plain_spec(1.0, 0.0, 1.0), data, 20), SpecError);
    }
}

TEST_CASE("step is exact unit-shift transport without sources") {
    const auto spec = plain_spec(1.0, 0.0, 10.0);
    SUBCASE("u shifts left") {
        const GridState s = raw_state({0, 0, 0, 0, 0}, {0, 0, 1, 0, 0});
        const GridState next = step(s, spec);
        const std::vector<double> expect = {0, 1, 0, 0, 0};
        for (int j = 0; j <= 4; ++j) CHECK(next.u[j] == expect[j]);
    }
    SUBCASE("w shifts right") {
        const GridState s = raw_state({0, 1, 0, 0, 0}, {0, 0, 0, 0, 0});
        const GridState next = step(s, spec);
        const std::vector<double> expect = {0, 0, 1, 0, 0};
        for (int j = 0; j <= 4; ++j) CHECK(next.w[j] == expect[j]);
    }
    SUBCASE("zero state stays zero") {
        const GridState s = raw_state(std::vector<double>(5, 0.0), std::vector<double>(5, 0.0));
        const GridState next = step(s, spec);
        for (int j = 0; j <= 4; ++j) {
            CHECK(next.w[j] == 0.0);
            CHECK(next.u[j] == 0.0);
        }
    }
}

TEST_CASE("single step against the hand-evaluated nodal solve") {
    // c = 0.1, a1 = 0, p = 0, N = 4, a = 1, w = (0,0,1,0,0), u = 0
    const auto spec = plain_spec(1.0, 0.0, 10.0, CoefficientField::constant(0.1));
    const GridState s = raw_state({0, 0, 1, 0, 0}, {0, 0, 0, 0, 0});
    const GridState next = step(s, spec);

    const double dt = 0.25;
    const double h = 0.5 * dt;
    const double c = 0.1;
    const double det = 1.0 + h * h * c;

    // hand sweep, j = 4 down to 0
    double uh[5], wh[5];
    uh[4] = 0.0;
    wh[4] = s.w[3] + h * (s.u[3] + uh[4]);
    for (int j = 3; j >= 1; --j) {
        const double A = s.w[j - 1] + h * s.u[j - 1];
        const double B = s.u[j + 1] - h * c * s.w[j + 1];
        uh[j] = (B - h * c * A) / det;
        wh[j] = A + h * uh[j];
    }
    uh[0] = (s.u[1] - h * c * s.w[1]) / 1.0;
    wh[0] = 0.0;

    for (int j = 0; j <= 4; ++j) {
        CHECK(std::abs(next.u[j] - uh[j]) < 1e-15);
        CHECK(std::abs(next.w[j] - wh[j]) < 1e-15);
    }
    // spot values: only nodes fed by w=1 move
    CHECK(next.u[1] == doctest::Approx(-h * c / det));
    CHECK(next.w[3] == doctest::Approx(1.0 + h * (-h * c / det)));
}

TEST_CASE("degenerate nodal determinant raises a stability error") {
    // dt = 1/4, h^2 c = -1 when c = -64
    const auto interior = plain_spec(1.0, 0.0, 10.0, CoefficientField::constant(-64.0));
    const GridState s = raw_state({0, 0, 1, 0, 0}, {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(step(s, interior), StabilityError);

    // boundary determinant 1 + h p c = 0 when c = -32, p = 1/4
    const auto boundary = plain_spec(1.0, 0.25, 10.0, CoefficientField::constant(-32.0));
    CHECK_THROWS_AS(step(s, boundary), StabilityError);
}

TEST_CASE("non-finite growth raises an overflow error") {
    // values near DBL_MAX overflow inside the source terms
    const auto spec = plain_spec(1.0, 0.0, 10.0, CoefficientField::constant(100.0));
    GridState s = raw_state(std::vector<double>(5, 1.7e308), std::vector<double>(5, 1.7e308));
    s.u[4] = 0.0;
    s.w[0] = 0.0;
    CHECK_THROWS_AS(step(s, spec), OverflowError);
}

TEST_CASE("step refuses to pass the horizon") {
    const auto spec = plain_spec(1.0, 0.0, 0.1);
    GridState s = raw_state(std::vector<double>(5, 0.0), std::vector<double>(5, 0.0));
    s = step(s, spec);   // first step may overshoot the horizon
    CHECK_THROWS_AS(step(s, spec), SpecError);
}

TEST_CASE("solve counts steps and records") {
    const std::vector<double> z(11, 0.0);
    const auto data = reduce_to_first_order(z, z, 1.0);
    const Trajectory traj = solve(plain_spec(1.0, 0.0, 1.0), data, 10);
    CHECK(traj.norms.size() == 11);
    CHECK(traj.states.back().t == doctest::Approx(1.0));

    const Trajectory thinned = solve(plain_spec(1.0, 0.0, 1.0), data, 10, 3);
    // steps 0,3,6,9 plus the final state at step 10
    CHECK(thinned.states.size() == 5);
    CHECK(thinned.norms.size() == 11);
}

TEST_CASE("exact extinction of the decoupled system") {
    const int n = 50;
    const double dt = 1.0 / n;
    for (double p : {0.0, 0.7, -1.3}) {
        const Trajectory traj = solve(plain_spec(1.0, p, 3.0), make_random_data(n, 77), n, 10);
        for (const auto& r : traj.norms) {
            if (r.t >= 1.0 + dt) {
                CHECK(r.u_l2 <= 1e-12);
                CHECK(r.u_sup <= 1e-12);
            }
            if (r.t >= 2.0 + 2 * dt) {
                CHECK(r.w_l2 <= 1e-12);
                CHECK(r.w_sup <= 1e-12);
            }
        }
    }
}

TEST_CASE("CFL alignment shifts values bit for bit") {
    const int n = 16;
    const auto spec = plain_spec(1.0, 0.0, 10.0);
    std::vector<double> w(n + 1), u(n + 1);
    unsigned s = 123;
    for (int j = 0; j <= n; ++j) {
        s = s * 1664525u + 1013904223u;
        w[j] = static_cast<double>(s) / 4294967296.0 - 0.5;
        s = s * 1664525u + 1013904223u;
        u[j] = static_cast<double>(s) / 4294967296.0 - 0.5;
    }
    u[n] = 0.0;
    w[0] = 0.0;

    SUBCASE("u shift with arbitrary w") {
        const GridState next = step(raw_state(w, u), spec);
        for (int j = 0; j < n; ++j) CHECK(next.u[j] == u[j + 1]);
        CHECK(next.u[n] == 0.0);
    }
    SUBCASE("w shift when u is zero") {
        const GridState next = step(raw_state(w, std::vector<double>(n + 1, 0.0)), spec);
        for (int j = 1; j <= n; ++j) CHECK(next.w[j] == w[j - 1]);
    }
}

TEST_CASE("solve is linear in the data") {
    const int n = 50;
    const auto spec = plain_spec(1.0, 0.5, 2.0, CoefficientField::separable_trig(0.4, pi, 1.0));
    const auto d1 = make_random_data(n, 11);
    const auto d2 = make_random_data(n, 21);
    const double alpha = 1.7, beta = -0.6;

    std::vector<double> w0(n + 1), w1(n + 1);
    for (int j = 0; j <= n; ++j) {
        w0[j] = alpha * d1.w0()[j] + beta * d2.w0()[j];
        w1[j] = alpha * d1.w1()[j] + beta * d2.w1()[j];
    }
    const auto dsum = reduce_to_first_order(w0, w1, 1.0);

    const Trajectory t1 = solve(spec, d1, n, 10);
    const Trajectory t2 = solve(spec, d2, n, 10);
    const Trajectory ts = solve(spec, dsum, n, 10);
    REQUIRE(ts.states.size() == t1.states.size());
    for (size_t k = 0; k < ts.states.size(); ++k)
        for (int j = 0; j <= n; ++j) {
            CHECK(std::abs(ts.states[k].w[j] -
                           (alpha * t1.states[k].w[j] + beta * t2.states[k].w[j])) < 1e-12);
            CHECK(std::abs(ts.states[k].u[j] -
                           (alpha * t1.states[k].u[j] + beta * t2.states[k].u[j])) < 1e-12);
        }
}

TEST_CASE("right-orientation solves are consistent through the mirror") {
    const int n = 40;
    const auto c = CoefficientField::separable_trig(0.2, 1.3, 0.7);
    const ProblemSpec left(1.0, 0.6, Orientation::LeftSmoothing, c, CoefficientField::zero(),
                           2.0);
    const auto w0 = DataFamily::random(5, 2.0).sample(n);
    const auto w1 = DataFamily::random(6, 1.5).sample(n);
    const Trajectory direct = solve(left, reduce_to_first_order(w0, w1, 1.0), n, 8);

    const ProblemSpec right = mirror_problem_inverse(left);
    const auto d_right = reduce_to_first_order(mirror_samples(w0), mirror_samples(w1), 1.0);
    Trajectory via = solve_right(right, d_right, n, 8);
    REQUIRE(via.states.size() == direct.states.size());
    for (size_t k = 0; k < via.states.size(); ++k) {
        const auto back_w = mirror_samples(via.states[k].w);
        const auto back_u = mirror_samples(via.states[k].u);
        for (int j = 0; j <= n; ++j) {
            CHECK(std::abs(back_w[j] - direct.states[k].w[j]) < 1e-12);
            CHECK(std::abs(back_u[j] - direct.states[k].u[j]) < 1e-12);
        }
    }
}

TEST_CASE("driven run converges at second order, explicit Euler at first") {
    const auto run = [](int n, StepScheme::Rule rule) {
        const ProblemSpec spec =
            plain_spec(1.0, 0.0, 1.0, CoefficientField::constant(0.2));
        StepScheme scheme = scenario::mms_sine_scheme(spec);
        scheme.rule = rule;
        const Trajectory traj = solve(spec, scenario::mms_sine_data(n, 1.0), n, n, scheme);
        const GridState& last = traj.states.back();
        std::vector<double> err(n + 1);
        for (int j = 0; j <= n; ++j)
            err[j] = last.w[j] -
                     scenario::mms_sine_exact_w(static_cast<double>(j) / n, last.t);
        return l2_norm(err, 1.0 / n);
    };

    const double e25 = run(25, StepScheme::Rule::TrapezoidalCharacteristic);
    const double e50 = run(50, StepScheme::Rule::TrapezoidalCharacteristic);
    const double order = std::log2(e25 / e50);
    CHECK(order > 1.6);
    CHECK(order < 2.4);

    const double g25 = run(25, StepScheme::Rule::ExplicitEuler);
    const double g50 = run(50, StepScheme::Rule::ExplicitEuler);
    const double euler_order = std::log2(g25 / g50);
    CHECK(euler_order > 0.6);
    CHECK(euler_order < 1.4);
    CHECK(g50 > e50);
}

TEST_CASE("extinction survives a first-order term when c vanishes") {
    const int n = 50;
    const double dt = 1.0 / n;
    const auto a1 = CoefficientField::separable_trig(0.8, 2.3, 1.1);
    const Trajectory traj =
        solve(plain_spec(1.0, 0.7, 3.0, CoefficientField::zero(), a1), make_random_data(n, 31), n, 5);

    bool u_gone = false;
    for (const auto& r : traj.norms) {
        if (!u_gone && r.u_sup == 0.0) u_gone = true;
        // once u vanished on the inflow it stays identically zero
        if (u_gone) CHECK(r.u_sup == 0.0);
        if (r.t >= 2.0 + 2 * dt) {
            CHECK(r.w_l2 <= 1e-12);
            CHECK(r.u_l2 <= 1e-12);
        }
    }
    CHECK(u_gone);
}

TEST_CASE("growth envelope stays finite for bounded perturbations") {
    const int n = 50;
    const auto c = CoefficientField::separable_trig(1.0, pi, 1.0);
    const Trajectory traj = solve(plain_spec(1.0, 0.5, 6.0, c), make_random_data(n, 91), n, 10);
    double peak = 0.0;
    for (const auto& r : traj.norms) peak = std::max(peak, r.w_l2);
    CHECK(std::isfinite(peak));
}
