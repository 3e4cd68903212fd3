#ifndef WAVELAB_PROBLEM_HPP
#define WAVELAB_PROBLEM_HPP

#include <span>
#include <vector>

#include "wavelab/coefficient_field.hpp"

namespace wavelab {

/// Which boundary absorbs the outgoing characteristic. LeftSmoothing is
/// the native orientation of the solver (reflection parameter p at x=0,
/// absorption at x=1); RightSmoothing is handled through mirror_problem.
enum class Orientation { LeftSmoothing, RightSmoothing };

class ProblemSpec {
  public:
    /// Validates a > 0, horizon > 0, and that both fields are finite and
    /// evaluable on [0,1] x [0,horizon]. Throws SpecError otherwise.
    ProblemSpec(double a, double p, Orientation orientation, CoefficientField c,
                CoefficientField a1, double horizon);

    double a() const { return a_; }
    /// Reflection parameter; houses q when orientation is RightSmoothing.
    double p() const { return p_; }
    Orientation orientation() const { return orientation_; }
    const CoefficientField& c() const { return c_; }
    const CoefficientField& a1() const { return a1_; }
    double horizon() const { return horizon_; }

    ProblemSpec with_c(CoefficientField c) const;
    ProblemSpec with_horizon(double horizon) const;

  private:
    double a_;
    double p_;
    Orientation orientation_;
    CoefficientField c_;
    CoefficientField a1_;
    double horizon_;
};

/// x -> 1-x reflection of a RightSmoothing problem. The returned spec is
/// LeftSmoothing with the same reflection parameter and mirrored
/// coefficient fields. Throws SpecError when applied to LeftSmoothing.
ProblemSpec mirror_problem(const ProblemSpec& spec);

/// Inverse reflection (LeftSmoothing -> RightSmoothing); mirroring and
/// un-mirroring compose to the identity, exactly.
ProblemSpec mirror_problem_inverse(const ProblemSpec& spec);

/// Reversed copy of node samples (the x -> 1-x map on a uniform grid).
std::vector<double> mirror_samples(std::span<const double> f);

class InitialData;

/// Builds the first-order data pair from wave-equation data: phi1 = w0,
/// phi2 = w1 + a * D(w0) with D the second-order difference stencil.
/// The only way to obtain an InitialData.
InitialData reduce_to_first_order(std::span<const double> w0, std::span<const double> w1,
                                  double a);

class InitialData {
  public:
    const std::vector<double>& w0() const { return w0_; }
    const std::vector<double>& w1() const { return w1_; }
    /// Identical to w0 by construction.
    const std::vector<double>& phi1() const { return w0_; }
    const std::vector<double>& phi2() const { return phi2_; }
    int n_cells() const { return static_cast<int>(w0_.size()) - 1; }

  private:
    friend InitialData reduce_to_first_order(std::span<const double>, std::span<const double>,
                                             double);
    InitialData(std::vector<double> w0, std::vector<double> w1, std::vector<double> phi2);

    std::vector<double> w0_;
    std::vector<double> w1_;
    std::vector<double> phi2_;
};

} // namespace wavelab

#endif
