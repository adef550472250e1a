#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "approx.hpp"
#include "illiqcorr/csv.hpp"
#include "illiqcorr/errors.hpp"
#include "temp_dir.hpp"

using namespace illiq;
using namespace illiq::csv;

TEST_CASE("field splitting handles quotes and escapes") {
    CHECK(split_fields("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_fields("a,,c") == std::vector<std::string>{"a", "", "c"});
    CHECK(split_fields("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
    CHECK(split_fields("\"a\"\"b\"") == std::vector<std::string>{"a\"b"});
    CHECK(split_fields("x,y\r") == std::vector<std::string>{"x", "y"});
    CHECK(split_fields("") == std::vector<std::string>{""});
    CHECK(split_fields("1;2;3", ';') == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("table reading skips blanks and validates widths") {
    std::istringstream in(
        "\n"
        "date,return\n"
        "2020-01-01,0.5\n"
        "\n"
        "2020-01-02,-0.25\n");
    const Table t = read_table(in, "mem");
    CHECK(t.columns == std::vector<std::string>{"date", "return"});
    REQUIRE(t.height() == 2);
    CHECK(t.rows[1][1] == "-0.25");

    std::istringstream ragged(
        "a,b\n"
        "1,2\n"
        "3\n");
    CHECK_THROWS_AS(read_table(ragged, "mem"), ParseError);
    try {
        std::istringstream again(
            "a,b\n"
            "1,2\n"
            "3\n");
        read_table(again, "mem");
    } catch (const ParseError& e) {
        CHECK(e.row == 3);
    }

    std::istringstream empty("");
    CHECK_THROWS_AS(read_table(empty, "mem"), ParseError);
}

TEST_CASE("column lookup and numeric parsing") {
    std::istringstream in(
        "date,return\n"
        "2020-01-01,0.5\n"
        "2020-01-02,oops\n");
    const Table t = read_table(in, "mem");

    CHECK(column_index(t, "return", "mem") == 1);
    CHECK_THROWS_AS(column_index(t, "price", "mem"), ParseError);

    try {
        numeric_column(t, 1, "mem");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row == 3);
    }

    std::istringstream ok(
        "x\n"
        "1.5\n"
        "-2e-3\n");
    const Table t2 = read_table(ok, "mem");
    const auto col = numeric_column(t2, 0, "mem");
    CHECK(col == std::vector<double>{1.5, -2e-3});
}

TEST_CASE("reading returns from a file") {
    testref::TempDir dir("csvtest");
    const std::string path = dir.write("returns.csv",
                                       "date,return\n"
                                       "2020-01-01,0.01\n"
                                       "2020-01-02,0.00\n"
                                       "2020-01-03,-0.02\n");

    const ReturnsFile f = load_returns(path);
    CHECK_FALSE(f.from_prices);
    CHECK(f.returns == std::vector<double>{0.01, 0.0, -0.02});
    CHECK(f.dates == std::vector<std::string>{"2020-01-01", "2020-01-02", "2020-01-03"});

    const std::string named = dir.write("named.csv",
                                        "r\n"
                                        "0.5\n");
    const ReturnsFile g = load_returns(named, "r");
    CHECK(g.returns == std::vector<double>{0.5});
    CHECK(g.dates.empty());

    CHECK_THROWS_AS(load_returns(dir.file("missing.csv")), FileNotFound);
}

TEST_CASE("reading prices differences into log returns") {
    testref::TempDir dir("csvtest");
    const std::string path = dir.write("prices.csv",
                                       "date,price\n"
                                       "2020-01-01,100\n"
                                       "2020-01-02,110\n"
                                       "2020-01-03,110\n");

    const ReturnsFile f = load_prices(path);
    CHECK(f.from_prices);
    REQUIRE(f.returns.size() == 2);
    CHECK(f.returns[0] == testref::Approx(std::log(1.1)).margin(1e-15));
    CHECK(f.returns[1] == 0.0);
    CHECK(f.dates == std::vector<std::string>{"2020-01-02", "2020-01-03"});

    const std::string neg = dir.write("neg.csv",
                                      "price\n"
                                      "100\n"
                                      "-5\n");
    CHECK_THROWS_AS(load_prices(neg), ParseError);

    const std::string single = dir.write("one.csv",
                                         "price\n"
                                         "100\n");
    CHECK_THROWS_AS(load_prices(single), DataError);
}
