#include <doctest.h>

#include <filesystem>

#include "fairtune/csv.hpp"
#include "fairtune/errors.hpp"
#include "test_util.hpp"

using namespace fairtune;

TEST_CASE("parse_csv reads plain rows") {
    const CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
    CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("parse_csv handles quoting, CRLF and missing final newline") {
    const CsvTable t = parse_csv("name,note\r\n\"Doe, J\",\"says \"\"hi\"\"\"\r\nplain,\"two\nlines\"");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "Doe, J");
    CHECK(t.rows[0][1] == "says \"hi\"");
    CHECK(t.rows[1][1] == "two\nlines");
}

TEST_CASE("parse_csv keeps empty fields") {
    const CsvTable t = parse_csv("a,b\n,\nx,\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"", ""});
    CHECK(t.rows[1] == std::vector<std::string>{"x", ""});
}

TEST_CASE("parse_csv rejects ragged rows and broken quotes") {
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ConfigError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ConfigError);
    CHECK_THROWS_AS(parse_csv("a,b\n\"oops,2\n"), ConfigError);
}

TEST_CASE("column lookup") {
    const CsvTable t = parse_csv("x,y\n1,2\n");
    CHECK(t.column("y") == 1);
    CHECK(t.has_column("x"));
    CHECK_FALSE(t.has_column("z"));
    CHECK_THROWS_AS(t.column("z"), ConfigError);
}

TEST_CASE("csv_line quotes only when needed and round-trips") {
    CHECK(csv_line({"a", "b"}) == "a,b\n");
    const std::string line = csv_line({"Doe, J", "say \"hi\"", "multi\nline", "plain"});
    const CsvTable t = parse_csv("h1,h2,h3,h4\n" + line);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0] == std::vector<std::string>{"Doe, J", "say \"hi\"", "multi\nline", "plain"});
}

TEST_CASE("write_file_atomic round-trips through read_csv") {
    const std::string path = testutil::temp_path("csv/roundtrip.csv");
    write_file_atomic(path, "a,b\n1,2\n");
    const CsvTable t = read_csv(path);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][1] == "2");
    // Overwrite must fully replace the previous content.
    write_file_atomic(path, "a,b\n9,8\n7,6\n");
    CHECK(read_csv(path).rows.size() == 2);
}

TEST_CASE("read_csv on a missing file is an I/O error") {
    CHECK_THROWS_AS(read_csv("/nonexistent/nowhere.csv"), IoError);
}
