#ifndef WAVELAB_NORMS_HPP
#define WAVELAB_NORMS_HPP

#include <span>
#include <vector>

namespace wavelab {

/// Composite-trapezoid L2 norm of node samples on a uniform grid with
/// spacing dx. Throws DataError on non-finite samples.
double l2_norm(std::span<const double> f, double dx);

/// sqrt(l2^2 + l2(Df)^2) where D is derivative_samples' stencil.
double h1_norm(std::span<const double> f, double dx);

/// max_i |f_i|; throws DataError on non-finite samples.
double sup_norm(std::span<const double> f);

/// Second-order first derivative: centered in the interior, one-sided
/// three-point stencils at both ends. Exact for quadratics.
std::vector<double> derivative_samples(std::span<const double> f, double dx);

} // namespace wavelab

#endif
