#ifndef WAVELAB_PLOT_HPP
#define WAVELAB_PLOT_HPP

#include <span>
#include <string>

namespace wavelab {

/// Deterministic gnuplot script plotting the named columns of a CSV
/// against its first column. Norm-magnitude columns (W, U, sup_w, sup_u,
/// sup_discrepancy, sup_theta_dist) get a logarithmic y axis. Throws
/// Error when the file is missing, ConfigError on an unknown column.
std::string emit_plot_script(const std::string& csv_path,
                             std::span<const std::string> columns);

} // namespace wavelab

#endif
