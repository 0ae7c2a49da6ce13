#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "readmit/cohort.hpp"
#include "readmit/errors.hpp"
#include "readmit/rng.hpp"

using namespace readmit;

namespace {

std::string fixture(const char* file) { return std::string(READMIT_TEST_DATA_DIR) + "/" + file; }

std::vector<AdmissionRecord> load_admissions() {
    std::ifstream in(fixture("cohort_admissions.csv"), std::ios::binary);
    REQUIRE(in);
    return parse_admissions(in, "cohort_admissions.csv");
}

std::vector<NoteRecord> load_notes() {
    std::ifstream in(fixture("cohort_notes.csv"), std::ios::binary);
    REQUIRE(in);
    return parse_notes(in, "cohort_notes.csv");
}

AdmissionRecord make_admission(std::int64_t hadm, const char* admit, const char* disch,
                               AdmissionType type, std::int64_t subject = 1) {
    AdmissionRecord a;
    a.row_id = hadm;
    a.subject_id = subject;
    a.hadm_id = hadm;
    a.admit_time = *parse_timestamp(admit);
    a.discharge_time = *parse_timestamp(disch);
    a.admission_type = type;
    return a;
}

NoteRecord make_summary(std::int64_t subject, std::int64_t hadm, const std::string& text) {
    NoteRecord n;
    n.row_id = hadm * 10;
    n.subject_id = subject;
    n.hadm_id = hadm;
    n.category = "Discharge summary";
    n.text = text;
    return n;
}

}  // namespace

TEST_CASE("admissions fixture parses field by field") {
    auto records = load_admissions();
    REQUIRE(records.size() == 14);

    CHECK(records[0].row_id == 1);
    CHECK(records[0].subject_id == 101);
    CHECK(records[0].hadm_id == 1001);
    CHECK(records[0].admit_time == *parse_timestamp("2130-01-01 10:00:00"));
    CHECK(records[0].discharge_time == *parse_timestamp("2130-01-05 12:00:00"));
    CHECK_FALSE(records[0].death_time.has_value());
    CHECK(records[0].admission_type == AdmissionType::Emergency);
    CHECK_FALSE(records[0].hospital_expire_flag);

    // lowercase and padded admission types parse the same
    CHECK(records[1].admission_type == AdmissionType::Emergency);
    CHECK(records[13].admission_type == AdmissionType::Emergency);

    CHECK(records[9].admission_type == AdmissionType::Newborn);

    REQUIRE(records[10].death_time.has_value());
    CHECK(*records[10].death_time == *parse_timestamp("2130-08-10 11:30:00"));
    CHECK(records[10].hospital_expire_flag);
}

TEST_CASE("notes fixture keeps only discharge summaries") {
    auto notes = load_notes();
    REQUIRE(notes.size() == 13);
    CHECK(notes[0].hadm_id == 1001);
    CHECK(notes[0].text == "Chest X-ray: clear.\nHome \"today\" with oxygen.");
    // case-insensitive category match
    CHECK(notes.back().hadm_id == 1014);
    // the Nursing and Radiology rows are gone
    for (const auto& n : notes) CHECK(n.hadm_id != 1013);
}

TEST_CASE("notes category filter is configurable") {
    std::ifstream in(fixture("cohort_notes.csv"), std::ios::binary);
    auto radiology = parse_notes(in, "n", "Radiology");
    REQUIRE(radiology.size() == 1);
    CHECK(radiology[0].hadm_id == 1013);
}

TEST_CASE("admissions parser reports row and column on bad input") {
    SUBCASE("malformed timestamp") {
        std::istringstream in(
            "ROW_ID,SUBJECT_ID,HADM_ID,ADMITTIME,DISCHTIME,DEATHTIME,ADMISSION_TYPE,HOSPITAL_EXPIRE_FLAG\n"
            "1,1,1,not-a-time,2130-01-02 00:00:00,,EMERGENCY,0\n");
        CHECK_THROWS_WITH_AS(parse_admissions(in, "adm"),
                             doctest::Contains("row 2, column ADMITTIME"), DataError);
    }
    SUBCASE("unknown admission type") {
        std::istringstream in(
            "ROW_ID,SUBJECT_ID,HADM_ID,ADMITTIME,DISCHTIME,DEATHTIME,ADMISSION_TYPE,HOSPITAL_EXPIRE_FLAG\n"
            "1,1,1,2130-01-01 00:00:00,2130-01-02 00:00:00,,TRANSFER,0\n");
        CHECK_THROWS_WITH_AS(parse_admissions(in, "adm"), doctest::Contains("ADMISSION_TYPE"),
                             DataError);
    }
    SUBCASE("missing required column") {
        std::istringstream in("ROW_ID,SUBJECT_ID,HADM_ID,ADMITTIME,DISCHTIME,DEATHTIME,ADMISSION_TYPE\n");
        CHECK_THROWS_WITH_AS(parse_admissions(in, "adm"),
                             doctest::Contains("HOSPITAL_EXPIRE_FLAG"), ParseError);
    }
    SUBCASE("discharge before admission") {
        std::istringstream in(
            "ROW_ID,SUBJECT_ID,HADM_ID,ADMITTIME,DISCHTIME,DEATHTIME,ADMISSION_TYPE,HOSPITAL_EXPIRE_FLAG\n"
            "1,1,1,2130-01-05 00:00:00,2130-01-02 00:00:00,,EMERGENCY,0\n");
        CHECK_THROWS_AS(parse_admissions(in, "adm"), DataError);
    }
}

TEST_CASE("readmission label follows the stated rule") {
    SUBCASE("next non-elective at day 10") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-01-12 00:00:00", "2130-01-14 00:00:00", AdmissionType::Urgent)};
        auto r = readmission_label(list, 0);
        CHECK(r.label);
        CHECK(*r.interval_days == 10.0);
    }
    SUBCASE("elective at day 5 skipped, non-elective at day 20 found") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-01-07 00:00:00", "2130-01-08 00:00:00", AdmissionType::Elective),
            make_admission(3, "2130-01-22 00:00:00", "2130-01-25 00:00:00", AdmissionType::Emergency)};
        auto r = readmission_label(list, 0);
        CHECK(r.label);
        CHECK(*r.interval_days == 20.0);
    }
    SUBCASE("last admission has no readmission") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency)};
        auto r = readmission_label(list, 0);
        CHECK_FALSE(r.label);
        CHECK_FALSE(r.interval_days.has_value());
    }
    SUBCASE("non-elective at day 31 is outside the window") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-02-02 00:00:00", "2130-02-04 00:00:00", AdmissionType::Urgent)};
        auto r = readmission_label(list, 0);
        CHECK_FALSE(r.label);
    }
    SUBCASE("only elective admissions follow") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-01-05 00:00:00", "2130-01-06 00:00:00", AdmissionType::Elective)};
        auto r = readmission_label(list, 0);
        CHECK_FALSE(r.label);
    }
    SUBCASE("overlapping stays clamp to zero") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-01-01 00:00:00", "2130-01-10 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-01-08 00:00:00", "2130-01-12 00:00:00", AdmissionType::Urgent)};
        auto r = readmission_label(list, 0);
        CHECK(r.label);
        CHECK(*r.interval_days == 0.0);
    }
    SUBCASE("unsorted input is rejected") {
        std::vector<AdmissionRecord> list = {
            make_admission(1, "2130-02-01 00:00:00", "2130-02-02 00:00:00", AdmissionType::Emergency),
            make_admission(2, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Urgent)};
        CHECK_THROWS_AS(readmission_label(list, 0), ContractError);
    }
}

TEST_CASE("cohort fixture traces exactly") {
    Cohort cohort = build_cohort(load_admissions(), load_notes());

    CHECK(cohort.stats.input_admissions == 14);
    CHECK(cohort.stats.excluded_newborn == 1);
    CHECK(cohort.stats.excluded_expired == 1);
    CHECK(cohort.stats.excluded_no_summary == 2);
    CHECK(cohort.stats.excluded_multiple_summaries == 1);
    CHECK(cohort.stats.retained_count == 9);
    CHECK(cohort.stats.positive_count == 4);
    CHECK(cohort.stats.retained_count + cohort.stats.excluded_newborn + cohort.stats.excluded_expired +
              cohort.stats.excluded_no_summary + cohort.stats.excluded_multiple_summaries ==
          cohort.stats.input_admissions);

    REQUIRE(cohort.subjects.size() == 9);
    struct Expected {
        std::int64_t hadm;
        bool label;
        double interval;
    };
    const Expected expected[] = {{1001, true, 10.0}, {1002, false, 0}, {1003, true, 20.0},
                                 {1004, true, 11.0}, {1005, false, 0}, {1006, true, 30.0},
                                 {1007, false, 0},   {1008, false, 0}, {1014, false, 0}};
    for (std::size_t i = 0; i < 9; ++i) {
        CAPTURE(i);
        CHECK(cohort.subjects[i].hadm_id == expected[i].hadm);
        CHECK(cohort.subjects[i].label == expected[i].label);
        if (expected[i].label) {
            REQUIRE(cohort.subjects[i].interval_days.has_value());
            CHECK(*cohort.subjects[i].interval_days == expected[i].interval);
        } else {
            CHECK_FALSE(cohort.subjects[i].interval_days.has_value());
        }
    }

    CHECK(cohort.subjects[0].summary_text == "Chest X-ray: clear.\nHome \"today\" with oxygen.");

    // histogram: one positive each at 10, 11, 20 and 30 whole days
    REQUIRE(cohort.stats.interval_histogram.size() == 31);
    CHECK(cohort.stats.interval_histogram[10] == 1);
    CHECK(cohort.stats.interval_histogram[11] == 1);
    CHECK(cohort.stats.interval_histogram[20] == 1);
    CHECK(cohort.stats.interval_histogram[30] == 1);
    std::uint64_t total = 0;
    for (auto c : cohort.stats.interval_histogram) total += c;
    CHECK(total == 4);
}

TEST_CASE("cohort is invariant under input shuffling") {
    auto admissions = load_admissions();
    auto notes = load_notes();
    Cohort baseline = build_cohort(admissions, notes);

    Rng rng(99);
    for (int round = 0; round < 5; ++round) {
        rng.shuffle(admissions);
        rng.shuffle(notes);
        Cohort shuffled = build_cohort(admissions, notes);
        REQUIRE(shuffled.subjects.size() == baseline.subjects.size());
        for (std::size_t i = 0; i < baseline.subjects.size(); ++i) {
            CHECK(shuffled.subjects[i].hadm_id == baseline.subjects[i].hadm_id);
            CHECK(shuffled.subjects[i].label == baseline.subjects[i].label);
            CHECK(shuffled.subjects[i].interval_days == baseline.subjects[i].interval_days);
            CHECK(shuffled.subjects[i].summary_text == baseline.subjects[i].summary_text);
        }
        CHECK(shuffled.stats.positive_count == baseline.stats.positive_count);
    }
}

TEST_CASE("inserting elective admissions never changes labels") {
    std::vector<AdmissionRecord> admissions = {
        make_admission(1, "2130-01-01 00:00:00", "2130-01-03 00:00:00", AdmissionType::Emergency, 7),
        make_admission(2, "2130-01-20 00:00:00", "2130-01-22 00:00:00", AdmissionType::Urgent, 7)};
    std::vector<NoteRecord> notes = {make_summary(7, 1, "first stay"), make_summary(7, 2, "second stay")};
    Cohort base = build_cohort(admissions, notes);
    REQUIRE(base.subjects.size() == 2);
    CHECK(base.subjects[0].label);
    CHECK(*base.subjects[0].interval_days == 17.0);

    for (int k = 1; k <= 3; ++k) {
        auto with_electives = admissions;
        for (int e = 0; e < k; ++e) {
            std::string admit = "2130-01-0" + std::to_string(5 + e) + " 00:00:00";
            std::string disch = "2130-01-0" + std::to_string(5 + e) + " 12:00:00";
            with_electives.push_back(
                make_admission(100 + e, admit.c_str(), disch.c_str(), AdmissionType::Elective, 7));
        }
        Cohort modified = build_cohort(with_electives, notes);
        const Subject* first = nullptr;
        for (const auto& s : modified.subjects)
            if (s.hadm_id == 1) first = &s;
        REQUIRE(first != nullptr);
        CHECK(first->label == base.subjects[0].label);
        CHECK(*first->interval_days == *base.subjects[0].interval_days);
    }
}

TEST_CASE("excluded admissions still serve as readmission events") {
    // second stay is NEWBORN-typed (degenerate, but isolates the rule):
    // it cannot join the cohort yet still triggers the first stay's label
    std::vector<AdmissionRecord> admissions = {
        make_admission(1, "2130-01-01 00:00:00", "2130-01-03 00:00:00", AdmissionType::Emergency, 9),
        make_admission(2, "2130-01-10 00:00:00", "2130-01-12 00:00:00", AdmissionType::Urgent, 9)};
    admissions[1].hospital_expire_flag = true;
    admissions[1].death_time = *parse_timestamp("2130-01-11 00:00:00");
    std::vector<NoteRecord> notes = {make_summary(9, 1, "index stay")};
    Cohort cohort = build_cohort(admissions, notes);
    REQUIRE(cohort.subjects.size() == 1);
    CHECK(cohort.subjects[0].hadm_id == 1);
    CHECK(cohort.subjects[0].label);
    CHECK(*cohort.subjects[0].interval_days == 7.0);
    CHECK(cohort.stats.excluded_expired == 1);
}

TEST_CASE("duplicate hadm_id is a data error naming the id") {
    std::vector<AdmissionRecord> admissions = {
        make_admission(5, "2130-01-01 00:00:00", "2130-01-02 00:00:00", AdmissionType::Emergency),
        make_admission(5, "2130-02-01 00:00:00", "2130-02-02 00:00:00", AdmissionType::Urgent)};
    CHECK_THROWS_WITH_AS(build_cohort(admissions, {}), doctest::Contains("5"), DataError);
}

TEST_CASE("empty inputs give an empty cohort with zero counts") {
    Cohort cohort = build_cohort({}, {});
    CHECK(cohort.subjects.empty());
    CHECK(cohort.stats.input_admissions == 0);
    CHECK(cohort.stats.retained_count == 0);
    CHECK(cohort.stats.positive_count == 0);
}

TEST_CASE("no retained subject is newborn or expired and intervals are bounded") {
    Cohort cohort = build_cohort(load_admissions(), load_notes());
    for (const Subject& s : cohort.subjects) {
        CHECK(s.hadm_id != 1010);  // the NEWBORN admission
        CHECK(s.hadm_id != 1011);  // the expired admission
        if (s.label) {
            CHECK(*s.interval_days >= 0.0);
            CHECK(*s.interval_days <= 30.0);
        }
    }
}

TEST_CASE("cohort JSONL round-trips") {
    Cohort cohort = build_cohort(load_admissions(), load_notes());
    std::ostringstream out;
    write_cohort(out, cohort.subjects);
    std::istringstream in(out.str());
    auto back = read_cohort(in, "cohort");
    REQUIRE(back.size() == cohort.subjects.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].hadm_id == cohort.subjects[i].hadm_id);
        CHECK(back[i].subject_id == cohort.subjects[i].subject_id);
        CHECK(back[i].label == cohort.subjects[i].label);
        CHECK(back[i].interval_days == cohort.subjects[i].interval_days);
        CHECK(back[i].summary_text == cohort.subjects[i].summary_text);
    }
    std::ostringstream again;
    write_cohort(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("cohort reader rejects inconsistent rows") {
    std::istringstream missing_interval(
        R"({"hadm_id":1,"subject_id":2,"label":true,"interval_days":null,"summary_text":"x"})");
    CHECK_THROWS_AS(read_cohort(missing_interval, "c"), DataError);

    std::istringstream duplicate(
        "{\"hadm_id\":1,\"subject_id\":2,\"label\":false,\"interval_days\":null,\"summary_text\":\"x\"}\n"
        "{\"hadm_id\":1,\"subject_id\":3,\"label\":false,\"interval_days\":null,\"summary_text\":\"y\"}\n");
    CHECK_THROWS_AS(read_cohort(duplicate, "c"), DataError);
}

TEST_CASE("cohort stats serialize with exclusion breakdown and histogram") {
    Cohort cohort = build_cohort(load_admissions(), load_notes());
    std::ostringstream out;
    write_cohort_stats(out, cohort.stats);
    auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["input_admissions"] == 14);
    CHECK(doc["exclusions"]["newborn"] == 1);
    CHECK(doc["exclusions"]["expired"] == 1);
    CHECK(doc["exclusions"]["no_summary"] == 2);
    CHECK(doc["exclusions"]["multiple_summaries"] == 1);
    CHECK(doc["retained"] == 9);
    CHECK(doc["positives"] == 4);
    CHECK(doc["positive_rate"].get<double>() == doctest::Approx(4.0 / 9.0));
    CHECK(doc["interval_histogram"].size() == 31);
    CHECK(doc["interval_histogram"][10]["count"] == 1);
}
