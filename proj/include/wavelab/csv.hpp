#ifndef WAVELAB_CSV_HPP
#define WAVELAB_CSV_HPP

#include <string>
#include <vector>

namespace wavelab {

/// Shortest decimal with up to 17 significant digits; round-trips a double
/// exactly and never emits locale-dependent separators.
std::string format_g17(double v);

/// Marker tokens used in place of numbers in CSV output.
inline constexpr const char* kExtinctMarker = "extinct";
inline constexpr const char* kNoneMarker = "none";
inline constexpr const char* kNaMarker = "na";

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Writes header + rows, comma separated, '\n' line endings. Parent
/// directory must exist. Throws Error on I/O failure.
void write_csv(const std::string& path, const CsvTable& table);

/// Reads a CSV written by write_csv (no quoting, no embedded commas).
CsvTable read_csv(const std::string& path);

} // namespace wavelab

#endif
