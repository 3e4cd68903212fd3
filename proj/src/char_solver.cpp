#include "wavelab/char_solver.hpp"

#include <cmath>
#include <string>

#include "wavelab/errors.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

namespace {

NormRecord make_record(const GridState& s) {
    return NormRecord{s.t, l2_norm(s.w, s.dx()), l2_norm(s.u, s.dx()), sup_norm(s.w),
                      sup_norm(s.u)};
}

void check_finite(const GridState& s, double c_scale, double dt) {
    for (int j = 0; j <= s.n_cells; ++j) {
        if (!std::isfinite(s.w[j]) || !std::isfinite(s.u[j]))
            throw OverflowError("step: non-finite value at node " + std::to_string(j) +
                                ", t=" + std::to_string(s.t) + " (sup|c|~" +
                                std::to_string(c_scale) + ", dt=" + std::to_string(dt) + ")");
    }
}

} // namespace

GridState init_state(const ProblemSpec& spec, const InitialData& data, int n_cells) {
    if (n_cells < 4) throw SpecError("init_state: need at least 4 cells");
    if (data.n_cells() != n_cells)
        throw SpecError("init_state: data sampled on " + std::to_string(data.n_cells() + 1) +
                        " nodes, grid wants " + std::to_string(n_cells + 1));
    GridState s;
    s.n_cells = n_cells;
    s.t = 0.0;
    s.w = data.phi1();
    s.u = data.phi2();
    s.u[n_cells] = 0.0;
    s.w[0] = spec.p() * s.u[0];
    return s;
}

GridState step(const GridState& state, const ProblemSpec& spec, const StepScheme& scheme) {
    const int n = state.n_cells;
    const double dx = state.dx();
    const double dt = dx / spec.a();
    if (state.t + dt > spec.horizon() + dt * (1.0 + 1e-9))
        throw SpecError("step: would pass the horizon");

    const double t0 = state.t;
    const double t1 = state.t + dt;
    const auto& c = spec.c();
    const auto& a1 = spec.a1();
    const double p = spec.p();

    std::vector<double> c_old(n + 1), c_new(n + 1), a1_old(n + 1), a1_new(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double x = j * dx;
        c_old[j] = c(x, t0);
        c_new[j] = c(x, t1);
        a1_old[j] = a1(x, t0);
        a1_new[j] = a1(x, t1);
    }

    auto fw = [&](double x, double t) { return scheme.forcing_w ? scheme.forcing_w(x, t) : 0.0; };
    auto fu = [&](double x, double t) { return scheme.forcing_u ? scheme.forcing_u(x, t) : 0.0; };
    const double gu = scheme.boundary_u ? scheme.boundary_u(t1) : 0.0;
    const double gw = scheme.boundary_w ? scheme.boundary_w(t1) : 0.0;

    GridState out;
    out.n_cells = n;
    out.t = t1;
    out.w.assign(n + 1, 0.0);
    out.u.assign(n + 1, 0.0);

    if (scheme.rule == StepScheme::Rule::ExplicitEuler) {
        out.u[n] = gu;
        for (int j = n - 1; j >= 0; --j) {
            const double xr = (j + 1) * dx;
            out.u[j] = state.u[j + 1] -
                       dt * (c_old[j + 1] * state.w[j + 1] + a1_old[j + 1] * state.u[j + 1]) +
                       dt * fu(xr, t0);
        }
        for (int j = 1; j <= n; ++j) {
            const double xl = (j - 1) * dx;
            out.w[j] = state.w[j - 1] + dt * state.u[j - 1] + dt * fw(xl, t0);
        }
        out.w[0] = p * out.u[0] + gw;
        check_finite(out, sup_norm(c_new), dt);
        return out;
    }

    // Trapezoidal sources along the two characteristics. At each node the
    // w- and u-updates couple through the new-level values; substituting
    // one into the other leaves a scalar equation for u_j with determinant
    // 1 + (dt/2) a1_j + (dt^2/4) c_j at the new level.
    const double h = 0.5 * dt;

    out.u[n] = gu;
    out.w[n] = state.w[n - 1] + h * (state.u[n - 1] + out.u[n]) +
               h * (fw((n - 1) * dx, t0) + fw(1.0, t1));

    for (int j = n - 1; j >= 1; --j) {
        const double xj = j * dx;
        const double A = state.w[j - 1] + h * state.u[j - 1] +
                         h * (fw((j - 1) * dx, t0) + fw(xj, t1));
        const double B = state.u[j + 1] -
                         h * (c_old[j + 1] * state.w[j + 1] + a1_old[j + 1] * state.u[j + 1]) +
                         h * (fu((j + 1) * dx, t0) + fu(xj, t1));
        const double det = 1.0 + h * a1_new[j] + h * h * c_new[j];
        if (std::abs(det) < 1e-12)
            throw StabilityError("step: nodal determinant " + std::to_string(det) + " at node " +
                                 std::to_string(j) + " (c=" + std::to_string(c_new[j]) +
                                 ", dt=" + std::to_string(dt) + ")");
        out.u[j] = (B - h * c_new[j] * A) / det;
        out.w[j] = A + h * out.u[j];
    }

    {
        const double B = state.u[1] - h * (c_old[1] * state.w[1] + a1_old[1] * state.u[1]) +
                         h * (fu(dx, t0) + fu(0.0, t1));
        const double det = 1.0 + h * a1_new[0] + h * p * c_new[0];
        if (std::abs(det) < 1e-12)
            throw StabilityError("step: boundary determinant " + std::to_string(det) +
                                 " (c=" + std::to_string(c_new[0]) + ", p=" + std::to_string(p) +
                                 ", dt=" + std::to_string(dt) + ")");
        out.u[0] = (B - h * c_new[0] * gw) / det;
        out.w[0] = p * out.u[0] + gw;
    }

    check_finite(out, sup_norm(c_new), dt);
    return out;
}

Trajectory solve(const ProblemSpec& spec, const InitialData& data, int n_cells, int record_every,
                 const StepScheme& scheme) {
    if (record_every < 1) throw SpecError("solve: record_every must be >= 1");
    GridState state = init_state(spec, data, n_cells);
    if (scheme.has_boundary_data()) {
        // a driven run's exact trace also fixes the t=0 endpoints
        state.u[n_cells] = scheme.boundary_u ? scheme.boundary_u(0.0) : 0.0;
        state.w[0] = spec.p() * state.u[0] + (scheme.boundary_w ? scheme.boundary_w(0.0) : 0.0);
    }
    const double dx = state.dx();
    const double dt = dx / spec.a();
    const int n_steps = static_cast<int>(std::ceil(spec.horizon() / dt - 1e-9));

    Trajectory traj;
    traj.n_cells = n_cells;
    traj.a = spec.a();
    traj.record_every = record_every;
    traj.data_norms = DataNorms{h1_norm(data.w0(), dx), l2_norm(data.w1(), dx),
                                l2_norm(data.phi1(), dx), l2_norm(data.phi2(), dx)};
    traj.norms.push_back(make_record(state));
    traj.states.push_back(state);

    for (int m = 1; m <= n_steps; ++m) {
        try {
            state = step(state, spec, scheme);
        } catch (const StabilityError& e) {
            throw StabilityError("step " + std::to_string(m) + ": " + e.what());
        } catch (const OverflowError& e) {
            throw OverflowError("step " + std::to_string(m) + ": " + e.what());
        }
        state.t = m * dt;   // keep recorded times drift-free
        traj.norms.push_back(make_record(state));
        if (m % record_every == 0 || m == n_steps) traj.states.push_back(state);
    }
    return traj;
}

Trajectory solve_right(const ProblemSpec& right_spec, const InitialData& data, int n_cells,
                       int record_every, const StepScheme& scheme) {
    const ProblemSpec left = mirror_problem(right_spec);
    const InitialData mirrored =
        reduce_to_first_order(mirror_samples(data.w0()), mirror_samples(data.w1()), left.a());
    Trajectory traj = solve(left, mirrored, n_cells, record_every, scheme);
    for (GridState& s : traj.states) {
        s.w = mirror_samples(s.w);
        s.u = mirror_samples(s.u);
    }
    return traj;
}

} // namespace wavelab
