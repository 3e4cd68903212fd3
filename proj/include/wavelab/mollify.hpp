#ifndef WAVELAB_MOLLIFY_HPP
#define WAVELAB_MOLLIFY_HPP

#include <span>
#include <vector>

#include "wavelab/problem.hpp"

namespace wavelab {

/// Smoothing schedule indexed by a single level l: kernel half-width
/// 1/(4l), endpoint cutoff margin 1/(2l). The invariant
/// kernel_width < cutoff_margin < 1/2 keeps the smoothed support strictly
/// inside (0,1); it rules out l = 1.
class MollifierParams {
  public:
    explicit MollifierParams(int level);

    int level() const { return level_; }
    double kernel_width() const { return 0.25 / level_; }
    double cutoff_margin() const { return 0.5 / level_; }

  private:
    int level_;
};

/// Smooth compactly supported approximation of grid samples: multiply by a
/// smooth cutoff vanishing near both endpoints, then convolve with a
/// discretely normalized bump kernel. The result is exactly zero on
/// [0, cutoff_margin - kernel_width] and its mirror image.
/// Throws ResolutionError when dx >= kernel_width/4.
std::vector<double> mollify(std::span<const double> f, const MollifierParams& params);

struct MollifyStudyRow {
    int level_lo = 0;
    int level_hi = 0;
    double phi1_l2_dist = 0.0;    // |phi1^l - phi1^l'|_L2
    double phi2_l2_dist = 0.0;
    double phi1_h1_dist = 0.0;    // reported alongside; H1 feeds the decay normalizer elsewhere
    double sup_theta_dist = 0.0;  // sup over recorded times of |w^l - w^l'|_L2
    double m3_hat = 0.0;
    double a_hat = 0.0;
    double bound = 0.0;           // m3_hat * exp(a_hat * horizon) * max(phi dists)
    bool within_bound = false;
};

/// Solves with mollified data at every level and tabulates, for each
/// consecutive pair, the sup-over-time L2 distance between the two
/// solutions together with a fitted growth envelope of the difference.
/// The distances must shrink down the list for a Cauchy sequence.
std::vector<MollifyStudyRow> generalized_solution_check(const ProblemSpec& spec,
                                                        std::span<const double> w0,
                                                        std::span<const double> w1,
                                                        std::span<const int> l_list, int n_cells);

} // namespace wavelab

#endif
