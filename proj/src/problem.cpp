#include "wavelab/problem.hpp"

#include <cmath>

#include "wavelab/errors.hpp"
#include "wavelab/norms.hpp"

namespace wavelab {

ProblemSpec::ProblemSpec(double a, double p, Orientation orientation, CoefficientField c,
                         CoefficientField a1, double horizon)
    : a_(a), p_(p), orientation_(orientation), c_(std::move(c)), a1_(std::move(a1)),
      horizon_(horizon) {
    if (!(a_ > 0.0) || !std::isfinite(a_)) throw SpecError("problem: wave speed a must be > 0");
    if (!std::isfinite(p_)) throw SpecError("problem: boundary parameter p must be finite");
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
        throw SpecError("problem: horizon must be > 0");
    if (c_.covered_time() < horizon_)
        throw SpecError("problem: sampled c does not cover [0, horizon]");
    if (a1_.covered_time() < horizon_)
        throw SpecError("problem: sampled a1 does not cover [0, horizon]");
    // probe a few evaluations; parametric fields validated at construction
    for (double x : {0.0, 0.5, 1.0})
        for (double t : {0.0, 0.5 * horizon_, horizon_})
            if (!std::isfinite(c_(x, t)) || !std::isfinite(a1_(x, t)))
                throw SpecError("problem: coefficient field evaluates non-finite");
}

ProblemSpec ProblemSpec::with_c(CoefficientField c) const {
    return ProblemSpec(a_, p_, orientation_, std::move(c), a1_, horizon_);
}

ProblemSpec ProblemSpec::with_horizon(double horizon) const {
    return ProblemSpec(a_, p_, orientation_, c_, a1_, horizon);
}

ProblemSpec mirror_problem(const ProblemSpec& spec) {
    if (spec.orientation() != Orientation::RightSmoothing)
        throw SpecError("mirror_problem: spec is not RightSmoothing");
    return ProblemSpec(spec.a(), spec.p(), Orientation::LeftSmoothing, spec.c().mirrored(),
                       spec.a1().mirrored(), spec.horizon());
}

ProblemSpec mirror_problem_inverse(const ProblemSpec& spec) {
    if (spec.orientation() != Orientation::LeftSmoothing)
        throw SpecError("mirror_problem_inverse: spec is not LeftSmoothing");
    return ProblemSpec(spec.a(), spec.p(), Orientation::RightSmoothing, spec.c().mirrored(),
                       spec.a1().mirrored(), spec.horizon());
}

std::vector<double> mirror_samples(std::span<const double> f) {
    return std::vector<double>(f.rbegin(), f.rend());
}

InitialData::InitialData(std::vector<double> w0, std::vector<double> w1,
                         std::vector<double> phi2)
    : w0_(std::move(w0)), w1_(std::move(w1)), phi2_(std::move(phi2)) {}

InitialData reduce_to_first_order(std::span<const double> w0, std::span<const double> w1,
                                  double a) {
    if (w0.size() != w1.size())
        throw SpecError("reduce_to_first_order: w0 and w1 sample counts differ");
    if (w0.size() < 3) throw SpecError("reduce_to_first_order: need at least 3 samples");
    if (!(a > 0.0) || !std::isfinite(a)) throw SpecError("reduce_to_first_order: a must be > 0");
    for (size_t j = 0; j < w0.size(); ++j)
        if (!std::isfinite(w0[j]) || !std::isfinite(w1[j]))
            throw DataError("reduce_to_first_order: non-finite sample");

    const double dx = 1.0 / (static_cast<double>(w0.size()) - 1.0);
    std::vector<double> phi2 = derivative_samples(w0, dx);
    for (size_t j = 0; j < phi2.size(); ++j) phi2[j] = w1[j] + a * phi2[j];
    return InitialData(std::vector<double>(w0.begin(), w0.end()),
                       std::vector<double>(w1.begin(), w1.end()), std::move(phi2));
}

} // namespace wavelab
