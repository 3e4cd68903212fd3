#include "wavelab/plot.hpp"

#include <array>
#include <sstream>

#include "wavelab/csv.hpp"
#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

constexpr std::array<const char*, 6> kLogColumns = {"W",       "U",
                                                    "sup_w",   "sup_u",
                                                    "sup_discrepancy", "sup_theta_dist"};

bool wants_log(const std::string& name) {
    for (const char* c : kLogColumns)
        if (name == c) return true;
    return false;
}

} // namespace

std::string emit_plot_script(const std::string& csv_path,
                             std::span<const std::string> columns) {
    const CsvTable table = read_csv(csv_path);
    if (table.header.empty()) throw Error("empty csv: " + csv_path);
    if (columns.empty()) throw ConfigError("plot: no columns requested");

    std::vector<size_t> idx;
    bool log_y = false;
    for (const auto& name : columns) {
        size_t found = table.header.size();
        for (size_t i = 0; i < table.header.size(); ++i)
            if (table.header[i] == name) found = i;
        if (found == table.header.size())
            throw ConfigError("plot: unknown column '" + name + "' in " + csv_path);
        idx.push_back(found);
        log_y = log_y || wants_log(name);
    }

    std::ostringstream os;
    os << "set datafile separator ','\n";
    os << "set xlabel '" << table.header[0] << "'\n";
    os << "set grid\n";
    if (log_y) os << "set logscale y\n";
    os << "plot ";
    for (size_t k = 0; k < idx.size(); ++k) {
        if (k) os << ", \\\n     ";
        os << "'" << csv_path << "' using 1:" << (idx[k] + 1) << " with lines title '"
           << columns[k] << "'";
    }
    os << "\n";
    os << "pause -1 'press return to close'\n";
    return os.str();
}

} // namespace wavelab
