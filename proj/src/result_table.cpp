#include "magq/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace magq {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ResultTable::add_metadata(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void ResultTable::add_metadata(const std::string& key, double value) {
    metadata.emplace_back(key, format_double(value));
}

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("ResultTable: row width does not match the columns");
    }
    rows.push_back(std::move(row));
}

void ResultTable::write_csv(std::ostream& os) const {
    os << "# experiment: " << experiment << "\n";
    for (const auto& [key, value] : metadata) {
        os << "# " << key << ": " << value << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << "# unit." << columns[c] << ": " << (c < units.size() ? units[c] : "1") << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::isfinite(row[c])) os << format_double(row[c]);
            os << (c + 1 < row.size() ? "," : "\n");
        }
    }
}

void ResultTable::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : metadata) meta[key] = value;
    j["metadata"] = meta;
    j["columns"] = columns;
    j["units"] = units;
    nlohmann::ordered_json data = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
        for (double v : row) {
            if (std::isfinite(v)) {
                jrow.push_back(v);
            } else {
                jrow.push_back(nullptr);
            }
        }
        data.push_back(jrow);
    }
    j["rows"] = data;
    os << j.dump(2) << "\n";
}

}  // namespace magq
