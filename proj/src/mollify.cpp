#include "wavelab/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavelab/analysis.hpp"
#include "wavelab/char_solver.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

namespace {

// C-infinity ramp: 0 for tau <= 0, 1 for tau >= 1.
double smooth_step(double tau) {
    if (tau <= 0.0) return 0.0;
    if (tau >= 1.0) return 1.0;
    const double b0 = std::exp(-1.0 / tau);
    const double b1 = std::exp(-1.0 / (1.0 - tau));
    return b0 / (b0 + b1);
}

// cutoff: 0 on [0,m] and [1-m,1], ramps over [m,2m] and its mirror
double cutoff(double x, double margin) {
    const double left = smooth_step((x - margin) / margin);
    const double right = smooth_step((1.0 - x - margin) / margin);
    return left * right;
}

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

} // namespace

MollifierParams::MollifierParams(int level) : level_(level) {
    if (level < 1) throw SpecError("mollifier: level must be >= 1");
    if (!(cutoff_margin() < 0.5))
        throw SpecError("mollifier: level " + std::to_string(level) +
                        " puts the cutoff margin at 1/2; need level >= 2");
}

std::vector<double> mollify(std::span<const double> f, const MollifierParams& params) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 2) throw SpecError("mollify: need at least 3 samples");
    const double dx = 1.0 / n;
    const double kw = params.kernel_width();
    const double margin = params.cutoff_margin();
    if (!(dx < kw / 4.0))
        throw ResolutionError("mollify: dx=" + std::to_string(dx) +
                              " cannot resolve kernel width " + std::to_string(kw) +
                              " (need dx < width/4)");
    for (double v : f)
        if (!std::isfinite(v)) throw DataError("mollify: non-finite sample");

    std::vector<double> cut(n + 1);
    for (int j = 0; j <= n; ++j) cut[j] = cutoff(j * dx, margin) * f[j];

    const int half = static_cast<int>(kw / dx);   // offsets with |o*dx| <= kw
    std::vector<double> weight(2 * half + 1);
    double total = 0.0;
    for (int o = -half; o <= half; ++o) {
        weight[o + half] = bump(o * dx / kw);
        total += weight[o + half];
    }

    // single division by the weight sum keeps constants exact
    std::vector<double> out(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int o = -half; o <= half; ++o) {
            const int k = j + o;
            if (k < 0 || k > n) continue;
            acc += weight[o + half] * cut[k];
        }
        out[j] = acc / total;
    }
    return out;
}

std::vector<MollifyStudyRow> generalized_solution_check(const ProblemSpec& spec,
                                                        std::span<const double> w0,
                                                        std::span<const double> w1,
                                                        std::span<const int> l_list,
                                                        int n_cells) {
    if (l_list.size() < 2) throw SpecError("generalized_solution_check: need at least 2 levels");
    for (size_t i = 1; i < l_list.size(); ++i)
        if (l_list[i] <= l_list[i - 1])
            throw SpecError("generalized_solution_check: l_list must be increasing");
    if (static_cast<int>(w0.size()) != n_cells + 1 || w0.size() != w1.size())
        throw SpecError("generalized_solution_check: data must have n_cells+1 samples");

    const double dx = 1.0 / n_cells;

    struct LevelRun {
        std::vector<double> phi1, phi2;
        Trajectory traj;
    };
    std::vector<LevelRun> runs;
    for (int l : l_list) {
        const MollifierParams params(l);
        LevelRun run;
        run.phi1 = mollify(w0, params);
        std::vector<double> w1m = mollify(w1, params);
        const InitialData data = reduce_to_first_order(run.phi1, w1m, spec.a());
        run.phi2 = data.phi2();
        run.traj = solve(spec, data, n_cells, 1);
        runs.push_back(std::move(run));
    }

    std::vector<MollifyStudyRow> rows;
    for (size_t i = 0; i + 1 < runs.size(); ++i) {
        const LevelRun& lo = runs[i];
        const LevelRun& hi = runs[i + 1];
        MollifyStudyRow row;
        row.level_lo = l_list[i];
        row.level_hi = l_list[i + 1];

        std::vector<double> d1(n_cells + 1), d2(n_cells + 1);
        for (int j = 0; j <= n_cells; ++j) {
            d1[j] = hi.phi1[j] - lo.phi1[j];
            d2[j] = hi.phi2[j] - lo.phi2[j];
        }
        row.phi1_l2_dist = l2_norm(d1, dx);
        row.phi2_l2_dist = l2_norm(d2, dx);
        row.phi1_h1_dist = h1_norm(d1, dx);

        std::vector<double> times, dists;
        std::vector<double> diff(n_cells + 1);
        const size_t steps = std::min(lo.traj.states.size(), hi.traj.states.size());
        for (size_t k = 0; k < steps; ++k) {
            if (lo.traj.states[k].t > spec.horizon() * (1.0 + 1e-12)) break;
            for (int j = 0; j <= n_cells; ++j)
                diff[j] = hi.traj.states[k].w[j] - lo.traj.states[k].w[j];
            times.push_back(lo.traj.states[k].t);
            dists.push_back(l2_norm(diff, dx));
        }
        row.sup_theta_dist = *std::max_element(dists.begin(), dists.end());

        const double normalizer = std::max(row.phi1_l2_dist, row.phi2_l2_dist);
        if (normalizer > 1e-300) {
            const FitReport fit = fit_growth_bound_series(times, dists, normalizer);
            row.m3_hat = fit.prefactor;
            row.a_hat = fit.rate;
            row.bound = fit.prefactor * std::exp(fit.rate * times.back()) * normalizer;
            row.within_bound = row.sup_theta_dist <= row.bound * (1.0 + 1e-9);
        } else {
            row.within_bound = row.sup_theta_dist == 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace wavelab
