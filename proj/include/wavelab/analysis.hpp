#ifndef WAVELAB_ANALYSIS_HPP
#define WAVELAB_ANALYSIS_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wavelab/grid.hpp"
#include "wavelab/problem.hpp"

namespace wavelab {

struct FitReport {
    enum class Kind { Decay, Growth };

    Kind kind = Kind::Decay;
    double rate = 0.0;        // gamma for Decay, A for Growth
    double prefactor = 0.0;   // M for Decay, M3 for Growth
    double window_lo = 0.0;
    double window_hi = 0.0;
    double rms_residual = 0.0;
    int sample_count = 0;
    int excluded_count = 0;   // below-floor samples left out of the fit
};

/// max(|w0|_H1, |w1|_L2), the normalizer of the decay bound.
double decay_normalizer(const InitialData& data);

/// max(|phi1|_L2, |phi2|_L2), the normalizer of the growth bound.
double phi_l2_normalizer(const InitialData& data);

/// Earliest recorded t* such that every recorded norm from t* on stays
/// under tol; empty when no such time exists within the horizon.
std::optional<double> extinction_time(const Trajectory& traj, double tol);

/// Least-squares line through (t, log W(t)) over the window, skipping
/// below-floor samples. rate = -slope, prefactor = exp(intercept)/normalizer.
/// Throws InsufficientDataError with fewer than 3 usable samples.
FitReport fit_decay_rate(const Trajectory& traj, double window_lo, double window_hi,
                         double normalizer, double floor = 1e-13);
FitReport fit_decay_rate_series(std::span<const double> t, std::span<const double> w,
                                double window_lo, double window_hi, double normalizer,
                                double floor = 1e-13);

/// Smallest A >= 0 from a log-linear fit of the running max of W, with the
/// prefactor M3 chosen so W(t) <= M3 * exp(A t) * normalizer holds at every
/// sample. All-zero input yields A = 0, M3 = 0.
FitReport fit_growth_bound(const Trajectory& traj, double normalizer, double floor = 1e-13);
FitReport fit_growth_bound_series(std::span<const double> t, std::span<const double> w,
                                  double normalizer, double floor = 1e-13);

/// Six sup-norms of discrete derivatives of w, orders
/// (0,0),(1,0),(0,1),(2,0),(1,1),(0,2), from centered second-order stencils
/// on >= 5 consecutive per-step states; sup over interior nodes at the
/// middle level.
std::array<double, 6> discrete_c2_norms(std::span<const GridState> states,
                                        const ProblemSpec& spec);

constexpr std::array<const char*, 6> kC2OrderNames = {"d00", "d10", "d01", "d20", "d11", "d02"};

struct SmoothingReport {
    std::vector<double> times;
    std::vector<int> n_list;
    /// norms[time][n][order]
    std::vector<std::vector<std::array<double, 6>>> norms;
    /// ratios[time][pair][order] = norm(n_k)/norm(n_{k+1}); NaN marks a
    /// below-floor denominator (norm already extinct).
    std::vector<std::vector<std::array<double, 6>>> ratios;
};

using DataSampler = std::function<InitialData(int n_cells)>;

/// Runs solve at every N in n_list and tabulates the discrete C2 norms at
/// each query time together with coarse/fine refinement ratios. Ratios
/// near 1 indicate a grid-independent (genuinely C2) quantity; ratios near
/// 0.5 indicate grid-scale roughness.
SmoothingReport smoothing_report(const ProblemSpec& spec, const DataSampler& sampler,
                                 std::span<const int> n_list, std::span<const double> query_times,
                                 double floor = 1e-13);

struct StabilityEstimate {
    double t = 0.0;
    double value = 0.0;
    bool extinct = false;   // every ensemble member below floor at t
};

/// Per-time ensemble max of log(W(t)/W(0))/t; members below floor count as
/// -infinity and the estimate is flagged extinct when all of them are.
std::vector<StabilityEstimate> stability_index(std::span<const Trajectory> ensemble,
                                               std::span<const double> t_list,
                                               double floor = 1e-13);

struct GronwallCheck {
    double k_hat = 0.0;    // smallest constant making the inequality hold
    double worst_t = 0.0;  // time where it is tight
    int sample_count = 0;
};

/// Fits the smallest K with W(t) <= K * sup_c * integral of W over
/// [t - 4/a, t] across all recorded t > 4/a.
GronwallCheck fit_gronwall_constant(const Trajectory& traj, double sup_c, double a);

} // namespace wavelab

#endif
