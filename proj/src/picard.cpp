#include "wavelab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab::picard {

namespace {

int snap_index(double value, double origin, double spacing, int count, const char* what) {
    const double f = (value - origin) / spacing;
    const int k = static_cast<int>(std::llround(f));
    if (std::abs(f - k) > 1e-6)
        throw CoverageError(std::string(what) + ": " + std::to_string(value) +
                            " is not on the lattice");
    if (k < 0 || k >= count)
        throw CoverageError(std::string(what) + ": " + std::to_string(value) +
                            " outside the lattice");
    return k;
}

// Composite Simpson weight for node m of an M-interval characteristic
// integral, with a trapezoid patch on a trailing odd interval. Simpson
// (rather than the solver's trapezoid) keeps the oracle's quadrature
// genuinely independent of the marching scheme: with matching trapezoid
// weights the march telescopes into the identical discrete integral
// system and the comparison degenerates to roundoff.
double quad_weight(int m, int m_total) {
    if (m_total == 0) return 0.0;
    const int base = (m_total / 2) * 2;
    double w = 0.0;
    if (base > 0 && m <= base) {
        if (m == 0 || m == base)
            w += 1.0 / 3.0;
        else if (m % 2 == 1)
            w += 4.0 / 3.0;
        else
            w += 2.0 / 3.0;
    }
    if (m_total > base && m >= base) w += 0.5;
    return w;
}

// Coefficient values on lattice nodes, cached level-major when a cache is
// provided, otherwise evaluated on demand.
struct CoefAccess {
    const ProblemSpec* spec = nullptr;
    const Lattice* geometry = nullptr;
    const std::vector<double>* c_cache = nullptr;
    const std::vector<double>* a1_cache = nullptr;
    bool a1_zero = true;

    double c_at(int level, int node) const {
        if (c_cache)
            return (*c_cache)[static_cast<size_t>(level) * (geometry->n_cells + 1) + node];
        return spec->c()(node * geometry->dx(), geometry->time(level));
    }
    double a1_at(int level, int node) const {
        if (a1_cache)
            return (*a1_cache)[static_cast<size_t>(level) * (geometry->n_cells + 1) + node];
        return spec->a1()(node * geometry->dx(), geometry->time(level));
    }
};

// u(x,t) at lattice node (level, node): quadrature of -c*w along the
// incoming characteristic back to the absorbing boundary, weighted by the
// integrating factor of a1 when present.
double u_at_node(const Lattice& w, const CoefAccess& coef, int level, int node) {
    const int n = w.n_cells;
    const int m_steps = n - node;
    if (level - m_steps < 0)
        throw CoverageError("picard_u: characteristic leaves the lattice (level " +
                            std::to_string(level) + ", node " + std::to_string(node) + ")");
    if (m_steps == 0) return 0.0;

    const double dt = w.dt();
    const double dx = w.dx();
    const double a = w.a;

    if (coef.a1_zero) {
        double sum = 0.0;
        for (int m = 0; m <= m_steps; ++m) {
            const double g = -coef.c_at(level - m, node + m) * w.at(level - m, node + m);
            sum += quad_weight(m, m_steps) * g;
        }
        return dt * sum;
    }

    // suffix integrals of a1/a from each node of the characteristic to x=1
    std::vector<double> suffix(m_steps + 1, 0.0);
    double prev = coef.a1_at(level - m_steps, n);
    for (int m = m_steps - 1; m >= 0; --m) {
        const double here = coef.a1_at(level - m, node + m);
        suffix[m] = suffix[m + 1] + (dx / a) * 0.5 * (here + prev);
        prev = here;
    }
    double sum = 0.0;
    for (int m = 0; m <= m_steps; ++m) {
        const double g = -coef.c_at(level - m, node + m) * w.at(level - m, node + m) *
                         std::exp(suffix[m]);
        sum += quad_weight(m, m_steps) * g;
    }
    return std::exp(-suffix[0]) * dt * sum;
}

// w(x,t) at lattice node: quadrature of u along the outgoing characteristic
// from the left boundary plus the reflected boundary value.
double w_from_u(const Lattice& u, double p, int level, int node) {
    if (level - node < 0) throw CoverageError("picard_w: characteristic leaves the lattice");
    double w = p * u.at(level - node, 0);
    if (node == 0) return w;
    double sum = 0.0;
    for (int k = 0; k <= node; ++k) sum += quad_weight(k, node) * u.at(level - k, node - k);
    return w + u.dt() * sum;
}

double interp_nodes(std::span<const double> f, double x) {
    const int n = static_cast<int>(f.size()) - 1;
    const double fx = std::clamp(x, 0.0, 1.0) * n;
    const int i = std::min(static_cast<int>(fx), n - 1);
    const double s = fx - i;
    return (1.0 - s) * f[i] + s * f[i + 1];
}

} // namespace

Lattice Lattice::zeros(int n_cells, double a, double t_start, int n_levels) {
    Lattice l;
    l.n_cells = n_cells;
    l.a = a;
    l.t_start = t_start;
    l.n_levels = n_levels;
    l.values.assign(static_cast<size_t>(n_levels) * (n_cells + 1), 0.0);
    return l;
}

Lattice Lattice::filled(int n_cells, double a, double t_start, int n_levels, double value) {
    Lattice l = zeros(n_cells, a, t_start, n_levels);
    std::fill(l.values.begin(), l.values.end(), value);
    return l;
}

int Lattice::level_of(double t) const {
    return snap_index(t, t_start, dt(), n_levels, "lattice time");
}

int Lattice::node_of(double x) const {
    return snap_index(x, 0.0, dx(), n_cells + 1, "lattice position");
}

HistorySegment HistorySegment::from_states(std::span<const GridState> states, double a) {
    if (states.empty()) throw SpecError("history: no states");
    const int n = states[0].n_cells;
    const double dt = 1.0 / (n * a);
    const int needed = 4 * n + 1;
    if (static_cast<int>(states.size()) < needed)
        throw CoverageError("history: need " + std::to_string(needed) +
                            " consecutive states, got " + std::to_string(states.size()));
    const auto seg = states.subspan(states.size() - needed);
    for (size_t k = 0; k < seg.size(); ++k) {
        if (seg[k].n_cells != n) throw SpecError("history: mixed grids");
        if (k > 0 && std::abs(seg[k].t - seg[k - 1].t - dt) > 1e-9 * dt)
            throw SpecError("history: states are not consecutive steps");
    }

    HistorySegment h;
    h.n_cells = n;
    h.a = a;
    h.t0 = seg.back().t;
    h.w = Lattice::zeros(n, a, h.t0 - 4.0 / a, needed);
    h.u = Lattice::zeros(n, a, h.t0 - 4.0 / a, needed);
    for (int k = 0; k < needed; ++k)
        for (int j = 0; j <= n; ++j) {
            h.w.at(k, j) = seg[k].w[j];
            h.u.at(k, j) = seg[k].u[j];
        }
    return h;
}

std::pair<double, double> decoupled_exact(const InitialData& data, const ProblemSpec& spec,
                                          int n_cells, double x, double t) {
    if (!spec.c().identically_zero() || !spec.a1().identically_zero())
        throw SpecError("decoupled_exact: c and a1 must be identically zero");
    if (data.n_cells() != n_cells) throw SpecError("decoupled_exact: data resolution mismatch");
    const double a = spec.a();
    const double p = spec.p();
    const double dt = 1.0 / (n_cells * a);

    // endpoint normalization, as init_state applies it
    std::vector<double> phi2 = data.phi2();
    phi2.back() = 0.0;
    std::vector<double> phi1 = data.phi1();
    phi1.front() = p * phi2.front();

    auto u_eval = [&](double xi, double tau) {
        const double arg = xi + a * tau;
        if (arg > 1.0 + 1e-12) return 0.0;
        return interp_nodes(phi2, arg);
    };

    const double u = u_eval(x, t);

    // w: transported datum or reflected boundary value, plus the
    // characteristic integral of u evaluated with the solver's trapezoid
    const double sigma_lo = std::max(0.0, t - x / a);
    double base;
    if (t - x / a <= 1e-12)
        base = interp_nodes(phi1, x - a * t);
    else
        base = p * u_eval(0.0, t - x / a);

    double integral = 0.0;
    const double duration = t - sigma_lo;
    if (duration > 1e-14) {
        int m_steps = static_cast<int>(std::llround(duration / dt));
        if (std::abs(m_steps * dt - duration) > 1e-9 * dt)
            m_steps = static_cast<int>(std::ceil(duration / dt - 1e-12));
        m_steps = std::max(m_steps, 1);
        const double h = duration / m_steps;
        double sum = 0.0;
        for (int m = 0; m <= m_steps; ++m) {
            const double sigma = sigma_lo + m * h;
            const double g = u_eval(x - a * (t - sigma), sigma);
            sum += (m == 0 || m == m_steps) ? 0.5 * g : g;
        }
        integral = h * sum;
    }
    return {base + integral, u};
}

double picard_u(double x, double t, const Lattice& w_field, const ProblemSpec& spec) {
    const int node = w_field.node_of(x);
    const int level = w_field.level_of(t);
    CoefAccess coef;
    coef.spec = &spec;
    coef.geometry = &w_field;
    coef.a1_zero = spec.a1().identically_zero();
    return u_at_node(w_field, coef, level, node);
}

double picard_w_equation(double x, double t, const Lattice& w_field, const ProblemSpec& spec) {
    const double a = spec.a();
    if (!(t > 4.0 / a - 1e-9)) throw SpecError("picard_w_equation: requires t > 4/a");
    const int node = w_field.node_of(x);
    const int level = w_field.level_of(t);
    const int n = w_field.n_cells;
    if (level - (node + n) < 0)
        throw CoverageError("picard_w_equation: history does not reach t - (x+1)/a");

    CoefAccess coef;
    coef.spec = &spec;
    coef.geometry = &w_field;
    coef.a1_zero = spec.a1().identically_zero();

    // outer characteristic integral of u, with u expanded by its own
    // incoming-characteristic integral at every outer node
    double sum = 0.0;
    for (int k = 0; k <= node; ++k)
        sum += quad_weight(k, node) * u_at_node(w_field, coef, level - k, node - k);
    const double boundary = u_at_node(w_field, coef, level - node, 0);
    return (node == 0 ? 0.0 : w_field.dt() * sum) + spec.p() * boundary;
}

PicardResult picard_solve(const HistorySegment& seed, const ProblemSpec& spec, double t_end,
                          double tol, int max_iter) {
    const int n = seed.n_cells;
    const double a = seed.a;
    const double dt = 1.0 / (n * a);
    if (!(t_end > seed.t0)) throw SpecError("picard_solve: t_end must exceed the seed time");
    if (max_iter < 1) throw SpecError("picard_solve: max_iter must be >= 1");
    if (!(tol > 0.0)) throw SpecError("picard_solve: tol must be > 0");

    const int k_end = static_cast<int>(std::ceil((t_end - seed.t0) / dt - 1e-9));
    const int seed_top = 4 * n;   // level index of t0 in the full lattice
    const int total_levels = seed_top + k_end + 1;

    Lattice w_all = Lattice::zeros(n, a, seed.t0 - 4.0 / a, total_levels);
    for (int k = 0; k <= seed_top; ++k)
        for (int j = 0; j <= n; ++j) w_all.at(k, j) = seed.w.at(k, j);
    Lattice u_all = Lattice::zeros(n, a, w_all.t_start, total_levels);

    // cache the coefficients on the lattice
    std::vector<double> c_cache(w_all.values.size()), a1_cache;
    const bool a1_zero = spec.a1().identically_zero();
    for (int k = 0; k < total_levels; ++k)
        for (int j = 0; j <= n; ++j)
            c_cache[static_cast<size_t>(k) * (n + 1) + j] = spec.c()(j * w_all.dx(), w_all.time(k));
    if (!a1_zero) {
        a1_cache.resize(w_all.values.size());
        for (int k = 0; k < total_levels; ++k)
            for (int j = 0; j <= n; ++j)
                a1_cache[static_cast<size_t>(k) * (n + 1) + j] =
                    spec.a1()(j * w_all.dx(), w_all.time(k));
    }
    CoefAccess coef;
    coef.spec = &spec;
    coef.geometry = &w_all;
    coef.c_cache = &c_cache;
    coef.a1_cache = a1_zero ? nullptr : &a1_cache;
    coef.a1_zero = a1_zero;

    const double p = spec.p();
    PicardResult result;
    result.converged = true;

    const int window_levels = 4 * n;
    int start = seed_top;
    while (start < seed_top + k_end) {
        const int end = std::min(start + window_levels, seed_top + k_end);

        // u is derived from frozen w once per window on the levels the
        // window's w-pass reaches below its start
        for (int k = std::max(0, start - n); k <= start; ++k)
            for (int j = 0; j <= n; ++j) u_all.at(k, j) = u_at_node(w_all, coef, k, j);

        // zero initial iterate inside the window
        for (int k = start + 1; k <= end; ++k)
            for (int j = 0; j <= n; ++j) w_all.at(k, j) = 0.0;

        WindowDiagnostics diag;
        diag.t_lo = w_all.time(start);
        diag.t_hi = w_all.time(end);
        double residual = std::numeric_limits<double>::infinity();
        bool diverged = false;
        int iter = 0;
        while (iter < max_iter && !diverged) {
            ++iter;
            for (int k = start + 1; k <= end; ++k)
                for (int j = 0; j <= n; ++j) u_all.at(k, j) = u_at_node(w_all, coef, k, j);
            residual = 0.0;
            for (int k = start + 1; k <= end; ++k)
                for (int j = 0; j <= n; ++j) {
                    const double next = w_from_u(u_all, p, k, j);
                    residual = std::max(residual, std::abs(next - w_all.at(k, j)));
                    w_all.at(k, j) = next;
                }
            // divergence is an outcome to report, not an exception
            if (!std::isfinite(residual) || residual > 1e100) {
                residual = std::numeric_limits<double>::infinity();
                diverged = true;
            }
            diag.residual_history.push_back(residual);
            if (residual <= tol) break;
        }
        diag.iterations = iter;
        diag.final_residual = residual;
        diag.converged = !diverged && residual <= tol;
        result.converged = result.converged && diag.converged;
        result.windows.push_back(diag);
        if (diverged) {
            // later windows would only iterate on garbage; mark and stop
            int cursor = end;
            while (cursor < seed_top + k_end) {
                const int next_end = std::min(cursor + window_levels, seed_top + k_end);
                WindowDiagnostics skipped;
                skipped.t_lo = w_all.time(cursor);
                skipped.t_hi = w_all.time(next_end);
                skipped.final_residual = std::numeric_limits<double>::infinity();
                result.windows.push_back(skipped);
                cursor = next_end;
            }
            result.converged = false;
            break;
        }
        start = end;
    }

    Lattice out = Lattice::zeros(n, a, seed.t0, k_end + 1);
    for (int k = 0; k <= k_end; ++k)
        for (int j = 0; j <= n; ++j) out.at(k, j) = w_all.at(seed_top + k, j);
    result.w = std::move(out);
    return result;
}

} // namespace wavelab::picard
