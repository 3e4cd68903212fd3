#include "wavelab/norms.hpp"

#include <cmath>
#include <cstddef>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

void require_finite(std::span<const double> f, const char* what) {
    for (double v : f) {
        if (!std::isfinite(v)) throw DataError(std::string(what) + ": non-finite sample");
    }
}

} // namespace

double l2_norm(std::span<const double> f, double dx) {
    if (f.size() < 2) throw SpecError("l2_norm: need at least 2 samples");
    require_finite(f, "l2_norm");
    double sum = 0.5 * (f.front() * f.front() + f.back() * f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) sum += f[j] * f[j];
    return std::sqrt(dx * sum);
}

double h1_norm(std::span<const double> f, double dx) {
    const double l2 = l2_norm(f, dx);
    const std::vector<double> df = derivative_samples(f, dx);
    const double dl2 = l2_norm(df, dx);
    return std::sqrt(l2 * l2 + dl2 * dl2);
}

double sup_norm(std::span<const double> f) {
    if (f.empty()) throw SpecError("sup_norm: empty samples");
    require_finite(f, "sup_norm");
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> derivative_samples(std::span<const double> f, double dx) {
    if (f.size() < 3) throw SpecError("derivative_samples: need at least 3 samples");
    require_finite(f, "derivative_samples");
    const std::size_t n = f.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

} // namespace wavelab
