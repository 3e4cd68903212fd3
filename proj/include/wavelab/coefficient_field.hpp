#ifndef WAVELAB_COEFFICIENT_FIELD_HPP
#define WAVELAB_COEFFICIENT_FIELD_HPP

#include <optional>
#include <vector>

namespace wavelab {

/// Bounded coefficient field on [0,1] x [0,T]: either a parametric family
/// with closed-form sup-norm, or values on a uniform space-time lattice
/// with bilinear interpolation between nodes.
///
/// Every variant carries a `mirrored` flag; when set, evaluation composes
/// with x -> 1-x. Mirroring twice restores the original field exactly,
/// parameters and samples included.
class CoefficientField {
  public:
    enum class Kind { Zero, Constant, SeparableTrig, GaussianBump, SampledGrid };

    static CoefficientField zero();
    static CoefficientField constant(double value);
    /// amplitude * cos(x_freq * x) * cos(t_freq * t)
    static CoefficientField separable_trig(double amplitude, double x_freq, double t_freq);
    /// amplitude * exp(-((x-center)/width)^2) * cos(t_mod_freq * t)
    static CoefficientField gaussian_bump(double amplitude, double center, double width,
                                          double t_mod_freq);
    /// values[it * (nx+1) + ix] on the lattice x = ix/nx, t = it*t_max/nt.
    static CoefficientField sampled_grid(int nx, int nt, double t_max,
                                         std::vector<double> values);

    double operator()(double x, double t) const;

    /// Exact sup of |field| over [0,1] x [0, t_max]: closed form for the
    /// parametric families, node max (plus the clipped slice) for grids.
    double sup_abs(double t_max) const;

    /// Closed-form upper bound on the C2 norm over the strip (all
    /// derivatives up to total order 2). Empty for SampledGrid, whose
    /// interpolant is only Lipschitz.
    std::optional<double> c2_norm_bound() const;

    bool identically_zero() const;

    CoefficientField mirrored() const;
    /// Pointwise multiple of the field (amplitude or lattice values scaled).
    CoefficientField scaled(double factor) const;
    bool is_mirrored() const { return mirrored_; }
    Kind kind() const { return kind_; }

    /// Largest lattice time for SampledGrid, +infinity otherwise.
    double covered_time() const;

    bool operator==(const CoefficientField&) const = default;

  private:
    CoefficientField() = default;

    Kind kind_ = Kind::Zero;
    bool mirrored_ = false;
    double amplitude_ = 0.0;
    double x_freq_ = 0.0;   // also: bump center
    double t_freq_ = 0.0;   // also: bump width
    double t_mod_ = 0.0;
    int nx_ = 0;
    int nt_ = 0;
    double t_max_ = 0.0;
    std::vector<double> values_;
};

} // namespace wavelab

#endif
