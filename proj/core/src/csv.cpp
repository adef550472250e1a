#include "illiqcorr/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "illiqcorr/errors.hpp"

namespace illiq::csv {

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::string text = line;
    if (!text.empty() && text.back() == '\r') text.pop_back();

    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

Table read_table(std::istream& in, const std::string& path_for_errors, char delim) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_fields(line, delim);
        if (table.columns.empty()) {
            table.columns = std::move(fields);
            continue;
        }
        if (fields.size() != table.columns.size())
            throw ParseError(path_for_errors, line_no,
                             "expected " + std::to_string(table.columns.size()) +
                                 " fields, found " + std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    if (table.columns.empty())
        throw ParseError(path_for_errors, line_no == 0 ? 1 : line_no, "no header row");
    return table;
}

Table read_table_file(const std::string& path, char delim) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    return read_table(in, path, delim);
}

std::size_t column_index(const Table& table, const std::string& name,
                         const std::string& path_for_errors) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return i;
    throw ParseError(path_for_errors, 1, "no column named '" + name + "'");
}

std::vector<double> numeric_column(const Table& table, std::size_t col,
                                   const std::string& path_for_errors) {
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& cell = table.rows[r][col];
        const char* begin = cell.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw ParseError(path_for_errors, r + 2, "cannot parse '" + cell + "' as a number");
        out.push_back(v);
    }
    return out;
}

namespace {

std::vector<std::string> date_column_or_empty(const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] != "date") continue;
        std::vector<std::string> dates;
        dates.reserve(table.rows.size());
        for (const auto& row : table.rows) dates.push_back(row[i]);
        return dates;
    }
    return {};
}

}  // namespace

ReturnsFile load_returns(const std::string& path, const std::string& column) {
    const Table table = read_table_file(path);
    ReturnsFile out;
    out.returns = numeric_column(table, column_index(table, column, path), path);
    out.dates = date_column_or_empty(table);
    return out;
}

ReturnsFile load_prices(const std::string& path, const std::string& column) {
    const Table table = read_table_file(path);
    const std::vector<double> prices =
        numeric_column(table, column_index(table, column, path), path);
    ReturnsFile out;
    out.from_prices = true;
    if (prices.size() < 2) throw ParseError(path, 2, "need at least two prices");
    out.returns.reserve(prices.size() - 1);
    for (std::size_t t = 0; t < prices.size(); ++t) {
        if (!(prices[t] > 0.0))
            throw ParseError(path, t + 2, "price must be strictly positive for log-returns");
        if (t > 0) out.returns.push_back(std::log(prices[t] / prices[t - 1]));
    }
    std::vector<std::string> dates = date_column_or_empty(table);
    if (!dates.empty()) out.dates.assign(dates.begin() + 1, dates.end());
    return out;
}

}  // namespace illiq::csv
