#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "readmit/porter.hpp"

using readmit::porter_stem;

namespace {

std::vector<std::pair<std::string, std::string>> load_vocab() {
    std::ifstream in(std::string(READMIT_TEST_DATA_DIR) + "/porter_vocab.txt");
    REQUIRE(in.good());
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    REQUIRE(pairs.size() > 1000);
    return pairs;
}

}  // namespace

TEST_CASE("spec examples") {
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("relational") == "relat");
}

TEST_CASE("classic transformations") {
    CHECK(porter_stem("generalizations") == "gener");
    CHECK(porter_stem("oscillators") == "oscil");
    CHECK(porter_stem("connected") == "connect");
    CHECK(porter_stem("connecting") == "connect");
    CHECK(porter_stem("connections") == "connect");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("falling") == "fall");
    CHECK(porter_stem("happy") == "happi");
    CHECK(porter_stem("controll") == "control");
    CHECK(porter_stem("feed") == "feed");
    CHECK(porter_stem("agreed") == "agre");
    CHECK(porter_stem("filing") == "file");
    CHECK(porter_stem("rate") == "rate");
}

TEST_CASE("bundled vocabulary conformance") {
    auto pairs = load_vocab();
    std::size_t mismatches = 0;
    for (const auto& [word, expected] : pairs) {
        std::string got = porter_stem(word);
        if (got != expected) {
            if (++mismatches <= 10) {
                MESSAGE("mismatch: ", word, " -> ", got, ", expected ", expected);
            }
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("idempotent on bundled vocabulary") {
    auto pairs = load_vocab();
    for (const auto& [word, expected] : pairs) {
        std::string once = porter_stem(word);
        CHECK(porter_stem(once) == once);
    }
}

TEST_CASE("total on degenerate input") {
    CHECK(porter_stem("") == "");
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("qq") == "qq");
}
