#ifndef WAVELAB_PICARD_HPP
#define WAVELAB_PICARD_HPP

#include <span>
#include <utility>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/problem.hpp"

namespace wavelab::picard {

/// Values on a uniform space-time lattice with the solver's geometry:
/// dx = 1/n_cells, dt = dx/a, levels t_start + k*dt. Characteristic
/// segments between lattice points stay on lattice points, so quadrature
/// along them needs no interpolation.
struct Lattice {
    int n_cells = 0;
    double a = 1.0;
    double t_start = 0.0;
    int n_levels = 0;   // time levels, so times t_start .. t_start + (n_levels-1)*dt
    std::vector<double> values;

    static Lattice zeros(int n_cells, double a, double t_start, int n_levels);
    static Lattice filled(int n_cells, double a, double t_start, int n_levels, double value);

    double dx() const { return 1.0 / n_cells; }
    double dt() const { return 1.0 / (n_cells * a); }
    double time(int level) const { return t_start + level * dt(); }
    double t_end() const { return time(n_levels - 1); }
    double& at(int level, int node) { return values[static_cast<size_t>(level) * (n_cells + 1) + node]; }
    double at(int level, int node) const { return values[static_cast<size_t>(level) * (n_cells + 1) + node]; }

    /// Nearest lattice level; throws CoverageError when t is not a lattice
    /// time (within tolerance) or lies outside the lattice.
    int level_of(double t) const;
    /// Nearest lattice node index for x, same contract as level_of.
    int node_of(double x) const;
};

/// Solution history on [t0 - 4/a, t0]: the memory depth a fresh window of
/// the combined w-equation can reach back into.
struct HistorySegment {
    int n_cells = 0;
    double a = 1.0;
    double t0 = 0.0;
    Lattice w;
    Lattice u;

    /// Builds the segment from consecutive per-step states (record_every=1)
    /// whose last entry defines t0. Validates spacing and coverage.
    static HistorySegment from_states(std::span<const GridState> states, double a);
};

struct WindowDiagnostics {
    double t_lo = 0.0;
    double t_hi = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;   // sup-difference per iteration
};

struct PicardResult {
    Lattice w;   // levels t0 .. t_end; the t0 level is the frozen seed top
    std::vector<WindowDiagnostics> windows;
    bool converged = false;
};

/// Closed-form solution of the decoupled problem (c = a1 = 0): exact
/// transport plus the explicit characteristic integrals of phi2, evaluated
/// with the same trapezoid rule the solver's source quadrature uses. The
/// data endpoints are normalized the way init_state normalizes them.
/// Throws SpecError when c or a1 is not identically zero.
std::pair<double, double> decoupled_exact(const InitialData& data, const ProblemSpec& spec,
                                          int n_cells, double x, double t);

/// u(x,t) from the characteristic integral of -c*w back to the absorbing
/// boundary, with the exponential integrating factor when a1 is nonzero.
/// Quadrature is composite Simpson on the lattice nodes (trapezoid patch
/// on a trailing odd interval); the marching solver's trapezoid rule
/// telescopes into the exact discrete fixed point of these equations, so
/// an independent oracle needs the higher-order weights to see anything
/// but roundoff. (x,t) must be a lattice point of w_field and the
/// characteristic must stay inside it (CoverageError otherwise).
/// Requires t + x/a > 1/a.
double picard_u(double x, double t, const Lattice& w_field, const ProblemSpec& spec);

/// The combined double-integral equation for w at (x,t), t > 4/a:
/// the outgoing-characteristic integral of u where u itself is replaced by
/// its incoming-characteristic integral of -c*w, plus the boundary-memory
/// term. w_field must cover [t - 4/a, t].
double picard_w_equation(double x, double t, const Lattice& w_field, const ProblemSpec& spec);

/// Successive substitution on the combined equation, sweeping forward in
/// windows of length 4/a and freezing converged history. Non-convergence
/// is reported in the diagnostics, never thrown.
PicardResult picard_solve(const HistorySegment& seed, const ProblemSpec& spec, double t_end,
                          double tol, int max_iter);

} // namespace wavelab::picard

#endif
