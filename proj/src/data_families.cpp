#include "wavelab/data_families.hpp"

#include <cmath>
#include <numbers>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

constexpr int kFourierTerms = 32;

// splitmix64: portable, engine-independent stream so that identical seeds
// give identical data on every platform
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t& state) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

} // namespace

DataFamily DataFamily::zero() {
    return DataFamily{};
}

DataFamily DataFamily::sine(double k) {
    if (!std::isfinite(k)) throw SpecError("data family sine: non-finite k");
    DataFamily f;
    f.kind_ = Kind::Sine;
    f.param_ = k;
    return f;
}

DataFamily DataFamily::hat(double center) {
    if (!std::isfinite(center)) throw SpecError("data family hat: non-finite center");
    DataFamily f;
    f.kind_ = Kind::Hat;
    f.param_ = center;
    return f;
}

DataFamily DataFamily::step(double edge) {
    if (!std::isfinite(edge)) throw SpecError("data family step: non-finite edge");
    DataFamily f;
    f.kind_ = Kind::Step;
    f.param_ = edge;
    return f;
}

DataFamily DataFamily::random(std::uint64_t seed, double smoothness) {
    if (!std::isfinite(smoothness)) throw SpecError("data family random: non-finite smoothness");
    DataFamily f;
    f.kind_ = Kind::Random;
    f.seed_ = seed;
    f.smoothness_ = smoothness;
    std::uint64_t state = seed;
    f.coeffs_.resize(kFourierTerms);
    for (int k = 1; k <= kFourierTerms; ++k)
        f.coeffs_[k - 1] = uniform_pm1(state) * std::pow(static_cast<double>(k), -smoothness);
    return f;
}

double DataFamily::operator()(double x) const {
    constexpr double pi = std::numbers::pi;
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Sine:
        return std::sin(param_ * pi * x);
    case Kind::Hat: {
        const double d = std::abs(x - param_) / 0.25;
        return d >= 1.0 ? 0.0 : 1.0 - d;
    }
    case Kind::Step:
        // midpoint value at the jump keeps the trapezoid bias at O(dx)
        if (std::abs(x - param_) <= 1e-12) return 0.5;
        return x < param_ ? 1.0 : 0.0;
    case Kind::Random: {
        double v = 0.0;
        for (int k = 1; k <= kFourierTerms; ++k) v += coeffs_[k - 1] * std::sin(k * pi * x);
        return v;
    }
    }
    return 0.0;
}

std::vector<double> DataFamily::sample(int n_cells) const {
    std::vector<double> out(n_cells + 1);
    for (int j = 0; j <= n_cells; ++j) out[j] = (*this)(static_cast<double>(j) / n_cells);
    return out;
}

std::string DataFamily::describe() const {
    switch (kind_) {
    case Kind::Zero:
        return "zero";
    case Kind::Sine:
        return "sine(" + std::to_string(param_) + ")";
    case Kind::Hat:
        return "hat(" + std::to_string(param_) + ")";
    case Kind::Step:
        return "step(" + std::to_string(param_) + ")";
    case Kind::Random:
        return "random(seed=" + std::to_string(seed_) +
               ", smoothness=" + std::to_string(smoothness_) + ")";
    }
    return "?";
}

} // namespace wavelab
