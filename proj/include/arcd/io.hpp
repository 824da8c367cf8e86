#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcd/ar1.hpp"

namespace arcd {

/// Reads one column of a comma-separated file. `column` is a 1-based index or a header name.
/// A header row is recognised when its selected field is not a number; lines starting with
/// '#' and blank lines are skipped. Throws ParseError (with line number) or InputError.
TimeSeries read_series(const std::filesystem::path& path, const std::string& column = "1",
                       bool demean = false);
TimeSeries parse_series(std::istream& in, const std::string& column = "1", bool demean = false);

enum class OutputFormat { csv, json };

struct Table {
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json summary = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

/// Shortest text that is exactly 17 significant digits; round-trips bit-exactly.
std::string format_real(double value);

/// CSV: "# config: {...}" and "# summary: {...}" comment lines, a header row, then data.
/// JSON: {"config", "summary", "columns", "rows"}.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

}  // namespace arcd
