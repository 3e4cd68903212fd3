// Acceptance suite: every release claim of the laboratory, one pass/fail
// line per criterion. Run with no arguments for all nine, or pass a
// criterion number to run one.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wavelab/analysis.hpp"
#include "wavelab/char_solver.hpp"
#include "wavelab/csv.hpp"
#include "wavelab/data_families.hpp"
#include "wavelab/mollify.hpp"
#include "wavelab/norms.hpp"
#include "wavelab/picard.hpp"
#include "wavelab/scenario.hpp"

using namespace wavelab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct NamedRun {
    std::string name;
    Trajectory traj;
    double normalizer = 1.0;
};

ProblemSpec left_spec(double a, double p, double horizon,
                      CoefficientField c = CoefficientField::zero(),
                      CoefficientField a1 = CoefficientField::zero()) {
    return ProblemSpec(a, p, Orientation::LeftSmoothing, std::move(c), std::move(a1), horizon);
}

InitialData seeded_data(int n, std::uint64_t seed, double s0, double s1) {
    return reduce_to_first_order(DataFamily::random(seed, s0).sample(n),
                                 DataFamily::random(seed + 1, s1).sample(n), 1.0);
}

std::string fmt(double v) { return format_g17(v); }

// ---- criterion 1: exact finite-time extinction at 2/a -------------------

std::vector<NamedRun> extinction_runs() {
    std::vector<NamedRun> runs;
    const int n = 200;
    for (double p : {0.0, 0.7, -1.3}) {
        for (int s = 0; s < 5; ++s) {
            const std::uint64_t seed = 101 + 2 * static_cast<std::uint64_t>(s);
            const auto data = seeded_data(n, seed, 2.0, 1.0);
            NamedRun run;
            run.name = "extinction p=" + fmt(p) + " seed=" + std::to_string(seed);
            run.traj = solve(left_spec(1.0, p, 3.0), data, n, 50);
            run.normalizer = decay_normalizer(data);
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

Outcome criterion_1() {
    double worst = 0.0;
    for (const auto& run : extinction_runs()) {
        const double dt = run.traj.dt();
        for (const auto& r : run.traj.norms) {
            if (r.t < 2.0 + 2.0 * dt) continue;
            const double m = std::max(std::max(r.w_l2, r.u_l2), std::max(r.w_sup, r.u_sup));
            worst = std::max(worst, m);
        }
    }
    return {worst <= 1e-12,
            "max residual norm past 2/a + 2dt over 15 runs = " + fmt(worst) + " (<= 1e-12)"};
}

// ---- criterion 2: decay rate grows as the perturbation shrinks ----------

// regression values frozen from the first accepted run of this suite
constexpr double kFrozenGamma[3] = {2.6930134354536017, 3.9912005178179597,
                                    5.2927676007932636};

struct DecayFits {
    std::vector<double> eps;
    std::vector<double> gamma;
    std::vector<NamedRun> runs;
};

DecayFits decay_sweep_runs() {
    DecayFits out;
    const int n = 200;
    const auto base = CoefficientField::separable_trig(1.0, kPi, 1.0);
    const auto data = seeded_data(n, 33, 2.5, 1.5);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        NamedRun run;
        run.name = "decay eps=" + fmt(eps);
        run.traj = solve(left_spec(1.0, 0.5, 40.0, base.scaled(eps)), data, n, 200);
        run.normalizer = decay_normalizer(data);
        const FitReport fit = fit_decay_rate(run.traj, 3.0, 35.0, run.normalizer);
        out.eps.push_back(eps);
        out.gamma.push_back(fit.rate);
        out.runs.push_back(std::move(run));
    }
    return out;
}

Outcome criterion_2() {
    const DecayFits fits = decay_sweep_runs();
    bool pass = true;
    std::string detail = "gamma(eps):";
    for (size_t i = 0; i < fits.eps.size(); ++i) {
        detail += " " + fmt(fits.eps[i]) + "->" + fmt(fits.gamma[i]);
        pass = pass && fits.gamma[i] > 0.0;
        if (i > 0) pass = pass && fits.gamma[i] > fits.gamma[i - 1];
        const double rel = std::abs(fits.gamma[i] - kFrozenGamma[i]) /
                           std::max(1e-30, std::abs(kFrozenGamma[i]));
        if (rel > 1e-7) {
            pass = false;
            detail += " [regression drift " + fmt(rel) + "]";
        }
    }
    return {pass, detail + "; strictly increasing as eps decreases"};
}

// ---- criterion 3: oracle equivalence under refinement --------------------

std::vector<NamedRun> oracle_char_runs(const std::vector<int>& n_list) {
    std::vector<NamedRun> runs;
    for (int n : n_list) {
        const auto data = seeded_data(n, 55, 3.0, 2.0);
        NamedRun run;
        run.name = "oracle N=" + std::to_string(n);
        run.traj = solve(left_spec(1.0, 0.5, 8.0, CoefficientField::constant(0.1)), data, n, 1);
        run.normalizer = decay_normalizer(data);
        runs.push_back(std::move(run));
    }
    return runs;
}

Outcome criterion_3() {
    const std::vector<int> n_list = {50, 100, 200};
    const auto runs = oracle_char_runs(n_list);
    std::vector<double> disc;
    for (size_t i = 0; i < n_list.size(); ++i) {
        const int n = n_list[i];
        const auto& traj = runs[i].traj;
        const auto seed = picard::HistorySegment::from_states(
            std::span<const GridState>(traj.states).subspan(0, 4 * n + 1), 1.0);
        const auto spec = left_spec(1.0, 0.5, 8.0, CoefficientField::constant(0.1));
        const auto res = picard::picard_solve(seed, spec, 8.0, 1e-12, 300);
        if (!res.converged) return {false, "picard did not converge at N=" + std::to_string(n)};
        double d = 0.0;
        for (int lev = 1; lev < res.w.n_levels; ++lev)
            for (int j = 0; j <= n; ++j)
                d = std::max(d, std::abs(traj.states[4 * n + lev].w[j] - res.w.at(lev, j)));
        disc.push_back(d);
    }
    const double order1 = std::log2(disc[0] / disc[1]);
    const double order2 = std::log2(disc[1] / disc[2]);
    const bool pass = order1 >= 1.8 && order2 >= 1.8 && disc[2] <= disc[0] / 10.0;
    return {pass, "sup discrepancies " + fmt(disc[0]) + ", " + fmt(disc[1]) + ", " +
                      fmt(disc[2]) + "; orders " + fmt(order1) + ", " + fmt(order2) +
                      " (>= 1.8); N=200 vs N=50 factor " + fmt(disc[0] / disc[2])};
}

// ---- criterion 4: manufactured-solution convergence ----------------------

std::vector<NamedRun> mms_runs(const std::vector<int>& n_list) {
    std::vector<NamedRun> runs;
    for (int n : n_list) {
        const auto spec = left_spec(1.0, 0.0, 1.0, CoefficientField::constant(0.2));
        NamedRun run;
        run.name = "mms N=" + std::to_string(n);
        run.traj = solve(spec, scenario::mms_sine_data(n, 1.0), n, n,
                         scenario::mms_sine_scheme(spec));
        run.normalizer = decay_normalizer(scenario::mms_sine_data(n, 1.0));
        runs.push_back(std::move(run));
    }
    return runs;
}

Outcome criterion_4() {
    const std::vector<int> n_list = {50, 100, 200};
    const auto runs = mms_runs(n_list);
    std::vector<double> err;
    for (size_t i = 0; i < n_list.size(); ++i) {
        const int n = n_list[i];
        const GridState& last = runs[i].traj.final_state();
        std::vector<double> diff(n + 1);
        for (int j = 0; j <= n; ++j)
            diff[j] = last.w[j] - scenario::mms_sine_exact_w(static_cast<double>(j) / n, last.t);
        err.push_back(l2_norm(diff, 1.0 / n));
    }
    const double order1 = std::log2(err[0] / err[1]);
    const double order2 = std::log2(err[1] / err[2]);
    const bool pass =
        order1 >= 1.8 && order1 <= 2.2 && order2 >= 1.8 && order2 <= 2.2;
    return {pass, "L2 errors at t=1: " + fmt(err[0]) + ", " + fmt(err[1]) + ", " + fmt(err[2]) +
                      "; observed orders " + fmt(order1) + ", " + fmt(order2) +
                      " (within 2.0 +/- 0.2)"};
}

// ---- criterion 5: smoothing at T = 6/a ------------------------------------

ProblemSpec smoothing_spec() {
    return left_spec(1.0, 0.5, 7.0, CoefficientField::separable_trig(0.01, kPi, 0.0));
}

InitialData smoothing_data(int n) {
    return reduce_to_first_order(DataFamily::hat(0.5).sample(n),
                                 DataFamily::step(0.5).sample(n), 1.0);
}

std::vector<NamedRun> smoothing_runs() {
    std::vector<NamedRun> runs;
    for (int n : {100, 200}) {
        NamedRun run;
        run.name = "smoothing N=" + std::to_string(n);
        run.traj = solve(smoothing_spec(), smoothing_data(n), n, 100);
        run.normalizer = decay_normalizer(smoothing_data(n));
        runs.push_back(std::move(run));
    }
    return runs;
}

Outcome criterion_5() {
    const std::vector<int> n_list = {100, 200};
    const std::vector<double> times = {0.5, 6.5};
    const SmoothingReport rep =
        smoothing_report(smoothing_spec(), smoothing_data, n_list, times);

    const double rough = rep.ratios[0][0][3];   // (2,0) at t = 0.5
    bool pass = rough <= 0.6;
    std::string detail = "(2,0) ratio at t=0.5: " + fmt(rough) + " (<= 0.6); t=6.5 ratios:";
    for (int q = 0; q < 6; ++q) {
        const double r = rep.ratios[1][0][q];
        detail += " " + std::string(kC2OrderNames[q]) + "=" + fmt(r);
        pass = pass && !std::isnan(r) && r >= 0.8 && r <= 1.2;
    }
    return {pass, detail + " (all within [0.8, 1.2])"};
}

// ---- criterion 6: growth-bound envelope for every scenario above ---------

Outcome criterion_6() {
    std::vector<NamedRun> all = extinction_runs();
    {
        auto d = decay_sweep_runs();
        for (auto& r : d.runs) all.push_back(std::move(r));
    }
    for (auto& r : oracle_char_runs({50, 100, 200})) all.push_back(std::move(r));
    for (auto& r : mms_runs({50, 100, 200})) all.push_back(std::move(r));
    for (auto& r : smoothing_runs()) all.push_back(std::move(r));

    int checked = 0;
    for (const auto& run : all) {
        const FitReport fit = fit_growth_bound(run.traj, run.normalizer);
        for (const auto& rec : run.traj.norms) {
            ++checked;
            const double bound =
                fit.prefactor * std::exp(fit.rate * rec.t) * run.normalizer * (1.0 + 1e-9);
            if (rec.w_l2 > bound)
                return {false, run.name + ": W(" + fmt(rec.t) + ") = " + fmt(rec.w_l2) +
                                   " exceeds envelope " + fmt(bound)};
        }
    }
    return {true, "envelope W(t) <= M3 e^{At} max(|w0|_H1, |w1|_L2) held at " +
                      std::to_string(checked) + " samples across " +
                      std::to_string(all.size()) + " scenario runs"};
}

// ---- criterion 7: mollified-data solutions are uniformly Cauchy ----------

Outcome criterion_7() {
    const int n = 400;
    const auto spec = left_spec(1.0, 0.5, 5.0, CoefficientField::constant(0.05));
    const auto w0 = DataFamily::hat(0.5).sample(n);
    const auto w1 = DataFamily::step(0.5).sample(n);
    const std::vector<int> levels = {2, 4, 8, 16};
    const auto rows = generalized_solution_check(spec, w0, w1, levels, n);

    bool pass = true;
    std::string detail = "sup distances:";
    for (size_t i = 0; i < rows.size(); ++i) {
        detail += " l" + std::to_string(rows[i].level_lo) + "->" +
                  std::to_string(rows[i].level_hi) + "=" + fmt(rows[i].sup_theta_dist);
        pass = pass && rows[i].within_bound;
        if (i > 0) pass = pass && rows[i].sup_theta_dist < rows[i - 1].sup_theta_dist;
    }
    return {pass, detail + "; strictly decreasing and within M3 e^{A*5} |phi^l - phi^l'|"};
}

// ---- criterion 8: first-order term generalization ------------------------

Outcome criterion_8() {
    // closed form of the integrating-factor quadrature at N = 400
    const int nf = 400;
    const auto spec_u = left_spec(1.0, 0.0, 4.0, CoefficientField::constant(1.0),
                                  CoefficientField::constant(1.0));
    const picard::Lattice unit = picard::Lattice::filled(nf, 1.0, 0.0, nf + 1, 1.0);
    double worst = 0.0;
    for (int i = 0; i <= nf; ++i) {
        const double x = static_cast<double>(i) / nf;
        const double closed = -(1.0 - std::exp(x - 1.0));
        worst = std::max(worst, std::abs(picard::picard_u(x, 1.0, unit, spec_u) - closed));
    }
    if (worst >= 1e-6)
        return {false, "picard_u vs closed form: max error " + fmt(worst) + " (needs < 1e-6)"};

    // extinction is untouched by a bounded a1 while c = 0: u stays exactly
    // zero once the inflow has swept through
    const int n = 200;
    const double dt = 1.0 / n;
    for (const auto& a1 : {CoefficientField::constant(1.0),
                           CoefficientField::separable_trig(0.8, 2.3, 1.1)}) {
        const auto traj =
            solve(left_spec(1.0, 0.7, 3.0, CoefficientField::zero(), a1),
                  seeded_data(n, 101, 2.0, 1.0), n, 50);
        bool u_gone = false;
        for (const auto& r : traj.norms) {
            if (!u_gone && r.u_sup == 0.0) u_gone = true;
            if (u_gone && r.u_sup != 0.0)
                return {false, "u revived after vanishing at t=" + fmt(r.t)};
            if (r.t >= 2.0 + 2.0 * dt) {
                const double m =
                    std::max(std::max(r.w_l2, r.u_l2), std::max(r.w_sup, r.u_sup));
                if (m > 1e-12)
                    return {false, "residual " + fmt(m) + " at t=" + fmt(r.t) +
                                       " despite c = 0 with a1 active"};
            }
        }
        if (!u_gone) return {false, "u never reached exact zero within the horizon"};
    }
    return {true, "picard_u matches -(1 - e^{x-1}) to " + fmt(worst) +
                      "; extinction by 2/a + 2dt with a1 != 0 and exact-zero u persistence"};
}

// ---- criterion 9: byte-identical reruns ----------------------------------

Outcome criterion_9() {
    const std::string cfg_text = R"(
problem.a = 1.0
problem.p = 0.7
problem.horizon = 3.0
data.w0.kind = random
data.w0.seed = 101
data.w0.smoothness = 2.0
data.w1.kind = random
data.w1.seed = 102
data.w1.smoothness = 1.0
grid.n = 200
grid.record_every = 50
output.states = true
reproduction = true
)";
    const auto cfg =
        scenario::parse_config_text(cfg_text, "acceptance9.cfg", scenario::Command::Solve);
    std::ostringstream log;
    scenario::run_solve(cfg, "acceptance9_a", log);
    scenario::run_solve(cfg, "acceptance9_b", log);

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    int compared = 0;
    for (const auto& entry : std::filesystem::directory_iterator("acceptance9_a")) {
        const std::string name = entry.path().filename().string();
        const std::string a = slurp("acceptance9_a/" + name);
        const std::string b = slurp("acceptance9_b/" + name);
        if (a.empty() || a != b)
            return {false, name + " differs between consecutive runs"};
        ++compared;
    }
    return {compared > 0, std::to_string(compared) + " output files byte-identical across reruns"};
}

} // namespace

int main(int argc, char** argv) {
    const std::function<Outcome()> criteria[9] = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9};
    const char* titles[9] = {
        "exact finite-time extinction at 2/a",
        "decay rate increases as the perturbation shrinks (frozen regression)",
        "solver/oracle discrepancy falls at order >= 1.8",
        "manufactured-solution convergence at order 2.0 +/- 0.2",
        "grid-scale roughness at t=0.5, grid-independent C2 norms at t=6.5",
        "growth envelope holds at every sample of every scenario",
        "mollified-data solutions are uniformly Cauchy",
        "first-order-term generalization (closed form + extinction)",
        "byte-identical CSV output across reruns"};

    int lo = 1, hi = 9;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > 9) {
            std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
            return 2;
        }
        lo = hi = k;
    }

    int failures = 0;
    for (int k = lo; k <= hi; ++k) {
        Outcome out;
        try {
            out = criteria[k - 1]();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d %s — %s: %s\n", k, out.pass ? "PASS" : "FAIL", titles[k - 1],
                    out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
