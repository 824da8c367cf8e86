#include "arcd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string_view>

#include "arcd/errors.hpp"

namespace arcd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_real(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

bool is_index(const std::string& column) {
    return !column.empty() && column.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

TimeSeries parse_series(std::istream& in, const std::string& column, bool demean) {
    std::size_t field = 0;
    const bool by_index = is_index(column);
    if (by_index) {
        field = std::stoul(column);
        if (field == 0) throw InputError("column index is 1-based");
        --field;
    }

    std::vector<double> values;
    bool seen_first = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto fields = split_fields(view);

        if (!seen_first) {
            seen_first = true;
            if (!by_index) {
                bool found = false;
                for (std::size_t i = 0; i < fields.size(); ++i)
                    if (fields[i] == column) {
                        field = i;
                        found = true;
                    }
                if (!found) throw ParseError("no column named '" + column + "' in the header", lineno);
                continue;
            }
            double probe = 0.0;
            if (field < fields.size() && !parse_real(fields[field], probe)) continue;  // header row
        }

        if (field >= fields.size())
            throw ParseError("row has " + std::to_string(fields.size()) + " fields, column " +
                                 std::to_string(field + 1) + " requested",
                             lineno);
        double v = 0.0;
        if (!parse_real(fields[field], v) || !std::isfinite(v))
            throw ParseError("not a finite number: '" + std::string(fields[field]) + "'", lineno);
        values.push_back(v);
    }
    if (values.size() < 2)
        throw InputError("series has " + std::to_string(values.size()) + " observations; at least 2 are needed");
    TimeSeries series(std::move(values));
    return demean ? series.demean() : series;
}

TimeSeries read_series(const std::filesystem::path& path, const std::string& column, bool demean) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return parse_series(in, column, demean);
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const nlohmann::json& cell) {
    if (cell.is_number_float()) return format_real(cell.get<double>());
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_null()) return "nan";
    return cell.dump();
}

}  // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::json) {
        nlohmann::json doc{{"config", table.config},
                           {"summary", table.summary},
                           {"columns", table.columns},
                           {"rows", table.rows}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# config: " << table.config.dump() << '\n';
    if (!table.summary.empty()) out << "# summary: " << table.summary.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

}  // namespace arcd
