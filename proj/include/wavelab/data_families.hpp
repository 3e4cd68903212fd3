#ifndef WAVELAB_DATA_FAMILIES_HPP
#define WAVELAB_DATA_FAMILIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wavelab {

/// Named initial-data families. Each is a function of x on [0,1] so the
/// same datum can be sampled consistently at any resolution:
///   zero            f = 0
///   sine(k)         f = sin(k*pi*x)
///   hat(center)     tent of half-width 1/4, peak 1 at center
///   step(edge)      1 left of edge, 0 right of it, 1/2 at the jump
///   random(seed,s)  sum_{k=1..32} a_k k^{-s} sin(k*pi*x), a_k uniform in
///                   [-1,1] from a deterministic seeded generator
class DataFamily {
  public:
    enum class Kind { Zero, Sine, Hat, Step, Random };

    static DataFamily zero();
    static DataFamily sine(double k);
    static DataFamily hat(double center);
    static DataFamily step(double edge);
    static DataFamily random(std::uint64_t seed, double smoothness);

    double operator()(double x) const;
    std::vector<double> sample(int n_cells) const;

    Kind kind() const { return kind_; }
    std::string describe() const;

  private:
    DataFamily() = default;

    Kind kind_ = Kind::Zero;
    double param_ = 0.0;        // k, center, or edge
    double smoothness_ = 0.0;
    std::uint64_t seed_ = 0;
    std::vector<double> coeffs_;
};

} // namespace wavelab

#endif
