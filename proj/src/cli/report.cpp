#include "oraclesim/cli/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace oraclesim::cli {

using json = nlohmann::ordered_json;

std::string report_to_machine_text(const RunReport& report) {
    json doc;
    doc["mode"] = report.mode;
    doc["config"] = report.config;
    doc["seed"] = report.seed;
    doc["results"] = report.results;
    doc["audits"] = report.audits;
    return doc.dump(2) + "\n";
}

namespace {

std::string scalar_text(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

bool is_scalar(const json& value) { return !value.is_object() && !value.is_array(); }

void render_columns(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                    bool header_row) {
    if (rows.empty()) return;
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            std::string cell = rows[r][c];
            cell.resize(widths[c], ' ');
            line += cell;
            if (c + 1 < rows[r].size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << "  " << line << "\n";
        if (header_row && r == 0 && rows.size() > 1) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < widths.size(); ++c) {
                total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
            }
            out << "  " << std::string(total, '-') << "\n";
        }
    }
}

void render_value(std::ostream& out, const std::string& title, const json& value);

// Arrays of uniform objects print as one table, header row first.
void render_array(std::ostream& out, const std::string& title, const json& array) {
    out << "[" << title << "]\n";
    if (array.empty()) {
        out << "  (none)\n";
        return;
    }
    bool objects = std::all_of(array.begin(), array.end(),
                               [](const json& item) { return item.is_object(); });
    if (objects) {
        std::vector<std::string> columns;
        for (const auto& item : array) {
            for (const auto& field : item.items()) {
                if (std::find(columns.begin(), columns.end(), field.key()) == columns.end()) {
                    columns.push_back(field.key());
                }
            }
        }
        std::vector<std::vector<std::string>> rows;
        rows.push_back(columns);
        for (const auto& item : array) {
            std::vector<std::string> row;
            for (const auto& column : columns) {
                row.push_back(item.contains(column) ? scalar_text(item[column]) : "");
            }
            rows.push_back(row);
        }
        render_columns(out, rows, true);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& item : array) rows.push_back({scalar_text(item)});
    render_columns(out, rows, false);
}

void render_object(std::ostream& out, const std::string& title, const json& object) {
    std::vector<std::vector<std::string>> scalars;
    for (const auto& field : object.items()) {
        if (is_scalar(field.value())) {
            scalars.push_back({field.key(), scalar_text(field.value())});
        }
    }
    if (!scalars.empty() || object.empty()) {
        out << "[" << title << "]\n";
        render_columns(out, scalars, false);
    }
    for (const auto& field : object.items()) {
        if (!is_scalar(field.value())) {
            render_value(out, title + "." + field.key(), field.value());
        }
    }
}

void render_value(std::ostream& out, const std::string& title, const json& value) {
    if (value.is_object()) {
        render_object(out, title, value);
    } else if (value.is_array()) {
        render_array(out, title, value);
    } else {
        out << "[" << title << "]\n  " << scalar_text(value) << "\n";
    }
}

}  // namespace

std::string report_to_table_text(const RunReport& report) {
    std::ostringstream out;
    out << "== " << report.mode << " ==\n";
    out << "seed: " << report.seed << "\n";
    render_value(out, "results", report.results);
    render_value(out, "audits", report.audits);
    return out.str();
}

}  // namespace oraclesim::cli
