#include "wavelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wavelab/char_solver.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    int count = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    double xm = 0.0, ym = 0.0;
    for (int i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    LineFit fit;
    fit.count = n;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = ym - fit.slope * xm;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

std::vector<double> record_times(const Trajectory& traj) {
    std::vector<double> t;
    t.reserve(traj.norms.size());
    for (const auto& r : traj.norms) t.push_back(r.t);
    return t;
}

std::vector<double> record_w(const Trajectory& traj) {
    std::vector<double> w;
    w.reserve(traj.norms.size());
    for (const auto& r : traj.norms) w.push_back(r.w_l2);
    return w;
}

} // namespace

double decay_normalizer(const InitialData& data) {
    const double dx = 1.0 / data.n_cells();
    return std::max(h1_norm(data.w0(), dx), l2_norm(data.w1(), dx));
}

double phi_l2_normalizer(const InitialData& data) {
    const double dx = 1.0 / data.n_cells();
    return std::max(l2_norm(data.phi1(), dx), l2_norm(data.phi2(), dx));
}

std::optional<double> extinction_time(const Trajectory& traj, double tol) {
    if (!(tol > 0.0)) throw SpecError("extinction_time: tol must be > 0");
    const auto& norms = traj.norms;
    int last_violation = -1;
    for (int i = static_cast<int>(norms.size()) - 1; i >= 0; --i) {
        const auto& r = norms[i];
        const double m = std::max(std::max(r.w_l2, r.u_l2), std::max(r.w_sup, r.u_sup));
        if (m > tol) {
            last_violation = i;
            break;
        }
    }
    if (last_violation + 1 >= static_cast<int>(norms.size())) return std::nullopt;
    return norms[last_violation + 1].t;
}

FitReport fit_decay_rate_series(std::span<const double> t, std::span<const double> w,
                                double window_lo, double window_hi, double normalizer,
                                double floor) {
    if (t.size() != w.size()) throw SpecError("fit_decay_rate: length mismatch");
    if (!(normalizer > 0.0)) throw SpecError("fit_decay_rate: normalizer must be > 0");
    std::vector<double> ts, ys;
    int excluded = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < window_lo || t[i] > window_hi) continue;
        if (w[i] <= floor) {
            ++excluded;
            continue;
        }
        ts.push_back(t[i]);
        ys.push_back(std::log(w[i]));
    }
    if (ts.size() < 3)
        throw InsufficientDataError("fit_decay_rate: only " + std::to_string(ts.size()) +
                                    " usable samples in window");
    const LineFit fit = least_squares(ts, ys);
    FitReport rep;
    rep.kind = FitReport::Kind::Decay;
    rep.rate = -fit.slope;
    rep.prefactor = std::exp(fit.intercept) / normalizer;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    rep.rms_residual = fit.rms;
    rep.sample_count = fit.count;
    rep.excluded_count = excluded;
    return rep;
}

FitReport fit_decay_rate(const Trajectory& traj, double window_lo, double window_hi,
                         double normalizer, double floor) {
    return fit_decay_rate_series(record_times(traj), record_w(traj), window_lo, window_hi,
                                 normalizer, floor);
}

FitReport fit_growth_bound_series(std::span<const double> t, std::span<const double> w,
                                  double normalizer, double floor) {
    if (t.size() != w.size() || t.empty()) throw SpecError("fit_growth_bound: bad series");
    if (!(normalizer > 0.0)) throw SpecError("fit_growth_bound: normalizer must be > 0");

    FitReport rep;
    rep.kind = FitReport::Kind::Growth;
    rep.window_lo = t.front();
    rep.window_hi = t.back();

    bool any_alive = false;
    for (double v : w)
        if (v > floor) any_alive = true;
    if (!any_alive) {
        rep.excluded_count = static_cast<int>(w.size());
        return rep;   // A = 0, M3 = 0
    }

    // slope of the log running max, clamped to growth
    std::vector<double> ts, ys;
    double running = 0.0;
    int excluded = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        running = std::max(running, w[i]);
        if (running <= floor) {
            ++excluded;
            continue;
        }
        ts.push_back(t[i]);
        ys.push_back(std::log(running));
    }
    double a_rate = 0.0;
    double rms = 0.0;
    if (ts.size() >= 2) {
        const LineFit fit = least_squares(ts, ys);
        a_rate = std::max(0.0, fit.slope);
        rms = fit.rms;
    }
    // prefactor chosen so the envelope inequality holds at every sample
    double m3 = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
        m3 = std::max(m3, w[i] * std::exp(-a_rate * t[i]));
    rep.rate = a_rate;
    rep.prefactor = m3 / normalizer;
    rep.rms_residual = rms;
    rep.sample_count = static_cast<int>(ts.size());
    rep.excluded_count = excluded;
    return rep;
}

FitReport fit_growth_bound(const Trajectory& traj, double normalizer, double floor) {
    return fit_growth_bound_series(record_times(traj), record_w(traj), normalizer, floor);
}

std::array<double, 6> discrete_c2_norms(std::span<const GridState> states,
                                        const ProblemSpec& spec) {
    if (states.size() < 5)
        throw InsufficientDataError("discrete_c2_norms: need 5 consecutive states, got " +
                                    std::to_string(states.size()));
    const int n = states[0].n_cells;
    const double dx = 1.0 / n;
    const double dt = dx / spec.a();
    for (size_t k = 0; k < states.size(); ++k) {
        if (states[k].n_cells != n) throw SpecError("discrete_c2_norms: mixed grids");
        if (k > 0 && std::abs(states[k].t - states[k - 1].t - dt) > 1e-9 * dt)
            throw SpecError("discrete_c2_norms: states are not consecutive steps");
    }
    const size_t mid = states.size() / 2;
    const auto& wm = states[mid - 1].w;
    const auto& w0 = states[mid].w;
    const auto& wp = states[mid + 1].w;

    std::array<double, 6> norms{};
    for (int j = 1; j < n; ++j) {
        const double d00 = w0[j];
        const double d10 = (w0[j + 1] - w0[j - 1]) / (2.0 * dx);
        const double d01 = (wp[j] - wm[j]) / (2.0 * dt);
        const double d20 = (w0[j + 1] - 2.0 * w0[j] + w0[j - 1]) / (dx * dx);
        const double d11 =
            ((wp[j + 1] - wp[j - 1]) - (wm[j + 1] - wm[j - 1])) / (4.0 * dx * dt);
        const double d02 = (wp[j] - 2.0 * w0[j] + wm[j]) / (dt * dt);
        const double vals[6] = {d00, d10, d01, d20, d11, d02};
        for (int q = 0; q < 6; ++q) norms[q] = std::max(norms[q], std::abs(vals[q]));
    }
    return norms;
}

SmoothingReport smoothing_report(const ProblemSpec& spec, const DataSampler& sampler,
                                 std::span<const int> n_list, std::span<const double> query_times,
                                 double floor) {
    if (n_list.empty()) throw SpecError("smoothing_report: empty n_list");
    for (size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 4) throw SpecError("smoothing_report: n must be >= 4");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw SpecError("smoothing_report: n_list must be strictly increasing");
        if (n_list[i] % n_list[0] != 0)
            throw SpecError("smoothing_report: every n must be a multiple of the smallest");
    }
    for (double q : query_times)
        if (!(q > 0.0) || q > spec.horizon())
            throw SpecError("smoothing_report: query time outside (0, horizon]");

    SmoothingReport rep;
    rep.times.assign(query_times.begin(), query_times.end());
    rep.n_list.assign(n_list.begin(), n_list.end());
    rep.norms.assign(query_times.size(), {});
    rep.ratios.assign(query_times.size(), {});

    std::vector<std::vector<std::array<double, 6>>> by_n;   // [n][time][order]
    for (int n : n_list) {
        const Trajectory traj = solve(spec, sampler(n), n, 1);
        const double dt = traj.dt();
        const int n_steps = static_cast<int>(traj.states.size()) - 1;
        std::vector<std::array<double, 6>> per_time;
        for (double q : query_times) {
            const int m = static_cast<int>(std::llround(q / dt));
            if (m < 2 || m + 2 > n_steps)
                throw SpecError("smoothing_report: query time " + std::to_string(q) +
                                " needs two steps of margin inside [0, horizon]");
            per_time.push_back(discrete_c2_norms(
                std::span<const GridState>(traj.states).subspan(m - 2, 5), spec));
        }
        by_n.push_back(std::move(per_time));
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t ti = 0; ti < query_times.size(); ++ti) {
        for (size_t ni = 0; ni < n_list.size(); ++ni) rep.norms[ti].push_back(by_n[ni][ti]);
        for (size_t ni = 0; ni + 1 < n_list.size(); ++ni) {
            std::array<double, 6> r{};
            for (int q = 0; q < 6; ++q) {
                const double num = by_n[ni][ti][q];
                const double den = by_n[ni + 1][ti][q];
                r[q] = den > floor ? num / den : nan;
            }
            rep.ratios[ti].push_back(r);
        }
    }
    return rep;
}

std::vector<StabilityEstimate> stability_index(std::span<const Trajectory> ensemble,
                                               std::span<const double> t_list, double floor) {
    if (ensemble.empty()) throw SpecError("stability_index: empty ensemble");
    for (const auto& traj : ensemble)
        if (!(traj.norms.front().w_l2 > 0.0))
            throw DataError("stability_index: a member has W(0) = 0");
    for (double t : t_list)
        if (!(t > 0.0)) throw SpecError("stability_index: times must be positive");

    std::vector<StabilityEstimate> out;
    for (double t : t_list) {
        StabilityEstimate est;
        est.t = t;
        est.extinct = true;
        est.value = -std::numeric_limits<double>::infinity();
        for (const auto& traj : ensemble) {
            // nearest recorded time
            const auto& norms = traj.norms;
            size_t lo = 0, hi = norms.size() - 1;
            while (lo < hi) {
                const size_t mid = (lo + hi) / 2;
                if (norms[mid].t < t)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            size_t best = lo;
            if (lo > 0 && std::abs(norms[lo - 1].t - t) < std::abs(norms[lo].t - t)) best = lo - 1;
            const double wt = norms[best].w_l2;
            if (wt <= floor) continue;
            est.extinct = false;
            est.value = std::max(est.value, std::log(wt / norms.front().w_l2) / t);
        }
        if (est.extinct) est.value = -std::numeric_limits<double>::infinity();
        out.push_back(est);
    }
    return out;
}

GronwallCheck fit_gronwall_constant(const Trajectory& traj, double sup_c, double a) {
    GronwallCheck check;
    if (!(sup_c > 0.0)) return check;   // unperturbed: nothing to bound
    const double dt = traj.dt();
    const int depth = static_cast<int>(std::llround(4.0 / (a * dt)));   // records spanning 4/a
    const auto& norms = traj.norms;
    for (int i = depth + 1; i < static_cast<int>(norms.size()); ++i) {
        double integral = 0.5 * (norms[i - depth].w_l2 + norms[i].w_l2);
        for (int k = i - depth + 1; k < i; ++k) integral += norms[k].w_l2;
        integral *= dt;
        const double denom = sup_c * integral;
        if (norms[i].w_l2 <= 1e-300 && denom <= 1e-300) continue;
        if (denom <= 0.0) continue;
        const double ratio = norms[i].w_l2 / denom;
        ++check.sample_count;
        if (ratio > check.k_hat) {
            check.k_hat = ratio;
            check.worst_t = norms[i].t;
        }
    }
    return check;
}

} // namespace wavelab
