#include <sstream>

#include "doctest.h"
#include "readmit/civil_time.hpp"
#include "readmit/csv.hpp"
#include "readmit/errors.hpp"

using namespace readmit;

namespace {

std::vector<std::vector<std::string>> read_all(const std::string& text) {
    std::istringstream in(text);
    CsvReader reader(in, "test.csv");
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    while (reader.next(fields)) records.push_back(fields);
    return records;
}

}  // namespace

TEST_CASE("plain records") {
    auto rec = read_all("a,b,c\n1,2,3\n");
    REQUIRE(rec.size() == 2);
    CHECK(rec[0] == std::vector<std::string>{"a", "b", "c"});
    CHECK(rec[1] == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("quoted fields with embedded commas, quotes and newlines") {
    auto rec = read_all("id,text\n7,\"line one\nline two, still field\"\n8,\"say \"\"hi\"\"\"\n");
    REQUIRE(rec.size() == 3);
    CHECK(rec[1][1] == "line one\nline two, still field");
    CHECK(rec[2][1] == "say \"hi\"");
}

TEST_CASE("crlf and missing trailing newline") {
    auto rec = read_all("a,b\r\n1,2");
    REQUIRE(rec.size() == 2);
    CHECK(rec[1] == std::vector<std::string>{"1", "2"});
}

TEST_CASE("empty fields") {
    auto rec = read_all("a,,c\n,,\n");
    REQUIRE(rec.size() == 2);
    CHECK(rec[0][1] == "");
    CHECK(rec[1] == std::vector<std::string>{"", "", ""});
}

TEST_CASE("unbalanced quote reports byte offset") {
    std::istringstream in("a,b\n1,\"open\n");
    CsvReader reader(in, "bad.csv");
    std::vector<std::string> fields;
    REQUIRE(reader.next(fields));
    CHECK_THROWS_WITH_AS(reader.next(fields), doctest::Contains("byte 6"), ParseError);
}

TEST_CASE("header lookup is case-insensitive") {
    CsvHeader header({"ROW_ID", " Subject_Id ", "TEXT"});
    CHECK(header.require("row_id", "t") == 0);
    CHECK(header.require("SUBJECT_ID", "t") == 1);
    CHECK(!header.find("missing").has_value());
    CHECK_THROWS_AS(header.require("HADM_ID", "t"), ParseError);
}

TEST_CASE("timestamp round trip") {
    auto t = parse_timestamp("2130-01-15 09:30:05");
    REQUIRE(t.has_value());
    CHECK(format_timestamp(*t) == "2130-01-15 09:30:05");

    auto epoch = parse_timestamp("1970-01-01 00:00:00");
    REQUIRE(epoch.has_value());
    CHECK(*epoch == 0);

    // leap day in a de-identified future year
    CHECK(parse_timestamp("2104-02-29 00:00:00").has_value());
    CHECK(!parse_timestamp("2103-02-29 00:00:00").has_value());
    CHECK(!parse_timestamp("2130-13-01 00:00:00").has_value());
    CHECK(!parse_timestamp("2130-01-15T09:30:05").has_value());
    CHECK(!parse_timestamp("").has_value());
}

TEST_CASE("day difference arithmetic") {
    auto a = parse_timestamp("2130-03-05 00:00:00");
    auto b = parse_timestamp("2130-04-04 00:00:00");
    REQUIRE(a);
    REQUIRE(b);
    CHECK((*b - *a) / kSecondsPerDay == doctest::Approx(30.0));
}
