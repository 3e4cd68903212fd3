#include "wavelab/coefficient_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

bool finite(double v) { return std::isfinite(v); }

} // namespace

CoefficientField CoefficientField::zero() {
    return CoefficientField{};
}

CoefficientField CoefficientField::constant(double value) {
    if (!finite(value)) throw SpecError("coefficient: non-finite constant");
    CoefficientField f;
    f.kind_ = Kind::Constant;
    f.amplitude_ = value;
    return f;
}

CoefficientField CoefficientField::separable_trig(double amplitude, double x_freq,
                                                  double t_freq) {
    if (!finite(amplitude) || !finite(x_freq) || !finite(t_freq))
        throw SpecError("coefficient: non-finite trig parameter");
    CoefficientField f;
    f.kind_ = Kind::SeparableTrig;
    f.amplitude_ = amplitude;
    f.x_freq_ = x_freq;
    f.t_freq_ = t_freq;
    return f;
}

CoefficientField CoefficientField::gaussian_bump(double amplitude, double center, double width,
                                                 double t_mod_freq) {
    if (!finite(amplitude) || !finite(center) || !finite(width) || !finite(t_mod_freq))
        throw SpecError("coefficient: non-finite bump parameter");
    if (width <= 0.0) throw SpecError("coefficient: bump width must be positive");
    CoefficientField f;
    f.kind_ = Kind::GaussianBump;
    f.amplitude_ = amplitude;
    f.x_freq_ = center;
    f.t_freq_ = width;
    f.t_mod_ = t_mod_freq;
    return f;
}

CoefficientField CoefficientField::sampled_grid(int nx, int nt, double t_max,
                                                std::vector<double> values) {
    if (nx < 1 || nt < 1) throw SpecError("coefficient: sampled grid needs nx,nt >= 1");
    if (!(t_max > 0.0) || !finite(t_max)) throw SpecError("coefficient: sampled grid t_max must be positive");
    if (values.size() != static_cast<size_t>(nx + 1) * (nt + 1))
        throw SpecError("coefficient: sampled grid value count mismatch");
    for (double v : values)
        if (!finite(v)) throw SpecError("coefficient: non-finite grid value");
    CoefficientField f;
    f.kind_ = Kind::SampledGrid;
    f.nx_ = nx;
    f.nt_ = nt;
    f.t_max_ = t_max;
    f.values_ = std::move(values);
    return f;
}

double CoefficientField::operator()(double x, double t) const {
    if (mirrored_) x = 1.0 - x;
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
        return amplitude_;
    case Kind::SeparableTrig:
        return amplitude_ * std::cos(x_freq_ * x) * std::cos(t_freq_ * t);
    case Kind::GaussianBump: {
        const double s = (x - x_freq_) / t_freq_;
        return amplitude_ * std::exp(-s * s) * std::cos(t_mod_ * t);
    }
    case Kind::SampledGrid: {
        // bilinear interpolation, clamped to the lattice box
        const double fx = std::clamp(x, 0.0, 1.0) * nx_;
        const double ft = std::clamp(t, 0.0, t_max_) / t_max_ * nt_;
        int ix = std::min(static_cast<int>(fx), nx_ - 1);
        int it = std::min(static_cast<int>(ft), nt_ - 1);
        const double ax = fx - ix;
        const double at = ft - it;
        auto v = [&](int i, int j) { return values_[static_cast<size_t>(j) * (nx_ + 1) + i]; };
        return (1 - at) * ((1 - ax) * v(ix, it) + ax * v(ix + 1, it)) +
               at * ((1 - ax) * v(ix, it + 1) + ax * v(ix + 1, it + 1));
    }
    }
    return 0.0;
}

double CoefficientField::sup_abs(double t_max) const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
    case Kind::SeparableTrig:
        // |cos| attains 1 at x=0 (or x=1 mirrored) and t=0
        return std::abs(amplitude_);
    case Kind::GaussianBump: {
        const double c = mirrored_ ? 1.0 - x_freq_ : x_freq_;
        double d = 0.0;
        if (c < 0.0) d = -c;
        if (c > 1.0) d = c - 1.0;
        const double s = d / t_freq_;
        return std::abs(amplitude_) * std::exp(-s * s);
    }
    case Kind::SampledGrid: {
        // node max over full rows below t_max plus the interpolated slice at t_max
        const double row_dt = t_max_ / nt_;
        double m = 0.0;
        const int full = std::min(nt_, static_cast<int>(std::floor(t_max / row_dt + 1e-12)));
        for (int j = 0; j <= full; ++j)
            for (int i = 0; i <= nx_; ++i)
                m = std::max(m, std::abs(values_[static_cast<size_t>(j) * (nx_ + 1) + i]));
        if (full < nt_) {
            const double at = t_max / row_dt - full;
            for (int i = 0; i <= nx_; ++i) {
                const double lo = values_[static_cast<size_t>(full) * (nx_ + 1) + i];
                const double hi = values_[static_cast<size_t>(full + 1) * (nx_ + 1) + i];
                m = std::max(m, std::abs((1 - at) * lo + at * hi));
            }
        }
        return m;
    }
    }
    return 0.0;
}

std::optional<double> CoefficientField::c2_norm_bound() const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
        return std::abs(amplitude_);
    case Kind::SeparableTrig: {
        const double wx = std::abs(x_freq_), wt = std::abs(t_freq_);
        double m = 1.0;
        for (double d : {wx, wt, wx * wx, wx * wt, wt * wt}) m = std::max(m, d);
        return std::abs(amplitude_) * m;
    }
    case Kind::GaussianBump: {
        // sup |d/ds exp(-s^2)| = sqrt(2) e^{-1/2}, sup |d2/ds2| = 2
        const double m1 = std::sqrt(2.0) * std::exp(-0.5) / t_freq_;
        const double m2 = 2.0 / (t_freq_ * t_freq_);
        const double wt = std::abs(t_mod_);
        double m = 1.0;
        for (double d : {m1, wt, m2, m1 * wt, wt * wt}) m = std::max(m, d);
        return std::abs(amplitude_) * m;
    }
    case Kind::SampledGrid:
        return std::nullopt;
    }
    return std::nullopt;
}

bool CoefficientField::identically_zero() const {
    switch (kind_) {
    case Kind::Zero:
        return true;
    case Kind::Constant:
    case Kind::SeparableTrig:
    case Kind::GaussianBump:
        return amplitude_ == 0.0;
    case Kind::SampledGrid:
        return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
    }
    return false;
}

CoefficientField CoefficientField::mirrored() const {
    CoefficientField f = *this;
    f.mirrored_ = !f.mirrored_;
    return f;
}

CoefficientField CoefficientField::scaled(double factor) const {
    if (!finite(factor)) throw SpecError("coefficient: non-finite scale factor");
    CoefficientField f = *this;
    if (f.kind_ == Kind::SampledGrid) {
        for (double& v : f.values_) v *= factor;
    } else {
        f.amplitude_ *= factor;
    }
    return f;
}

double CoefficientField::covered_time() const {
    return kind_ == Kind::SampledGrid ? t_max_ : std::numeric_limits<double>::infinity();
}

} // namespace wavelab
