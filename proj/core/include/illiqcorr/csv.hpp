#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace illiq::csv {

// In-memory delimited table: a header row plus string cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t width() const { return columns.size(); }
    std::size_t height() const { return rows.size(); }
};

// Splits one line on the delimiter. Double-quoted fields may contain the
// delimiter; a doubled quote inside a quoted field is an escaped quote.
// A trailing carriage return is stripped.
std::vector<std::string> split_fields(const std::string& line, char delim = ',');

// Reads a whole delimited stream. The first non-empty line is the header,
// later blank lines are skipped. Rows whose field count differs from the
// header raise ParseError tagged with the 1-based line number.
Table read_table(std::istream& in, const std::string& path_for_errors, char delim = ',');

// Convenience wrapper that opens the file, raising FileNotFound on failure.
Table read_table_file(const std::string& path, char delim = ',');

// Index of the column with this exact name; ParseError if absent.
std::size_t column_index(const Table& table, const std::string& name,
                         const std::string& path_for_errors);

// Parses an entire column as doubles; non-numeric cells raise ParseError
// tagged with the data row's 1-based position (header is row 1).
std::vector<double> numeric_column(const Table& table, std::size_t col,
                                   const std::string& path_for_errors);

/**
 * A return series read from disk, with any `date` column carried along
 * (aligned with the returns; empty when the file has none). When built from
 * prices the first row is consumed by the log-return differencing.
 */
struct ReturnsFile {
    std::vector<double> returns;
    std::vector<std::string> dates;
    bool from_prices = false;
};

// Reads the named column as returns.
ReturnsFile load_returns(const std::string& path, const std::string& column = "return");

// Reads the named column as price levels and differences them into
// log-returns log(p_t / p_{t-1}); prices must be strictly positive.
ReturnsFile load_prices(const std::string& path, const std::string& column = "price");

}  // namespace illiq::csv
