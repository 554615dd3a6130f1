#ifndef MAGQ_RESULT_TABLE_HPP
#define MAGQ_RESULT_TABLE_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace magq {

/// Rectangular numeric result with a metadata block. NaN cells mark
/// non-converged sweep points; the CSV writer leaves them empty and the
/// JSON writer emits null.
struct ResultTable {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::string> units;  // one per column
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_metadata(const std::string& key, const std::string& value);
    void add_metadata(const std::string& key, double value);
    void add_row(std::vector<double> row);

    /// '#'-prefixed metadata header (parameter echo and per-column units),
    /// comma separators, 17 significant digits.
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

/// Full-precision default formatting ("%.17g").
std::string format_double(double v);

}  // namespace magq

#endif
