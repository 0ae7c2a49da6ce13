#include "readmit/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"
#include "readmit/csv.hpp"
#include "readmit/errors.hpp"

namespace readmit {

namespace {

[[noreturn]] void field_error(const std::string& name, std::size_t record, const std::string& column,
                              const std::string& what) {
    throw DataError(name + ": row " + std::to_string(record) + ", column " + column + ": " + what);
}

std::int64_t parse_id(const std::string& raw, const std::string& name, std::size_t record,
                      const std::string& column) {
    std::string s = trim(raw);
    if (s.empty()) field_error(name, record, column, "empty identifier");
    try {
        std::size_t used = 0;
        std::int64_t value = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        field_error(name, record, column, "not an integer: '" + s + "'");
    }
}

Timestamp parse_time_field(const std::string& raw, const std::string& name, std::size_t record,
                           const std::string& column) {
    auto ts = parse_timestamp(trim(raw));
    if (!ts) field_error(name, record, column, "malformed timestamp: '" + trim(raw) + "'");
    return *ts;
}

}  // namespace

AdmissionType parse_admission_type(std::string_view text) {
    std::string s = to_lower(trim(std::string(text)));
    if (s == "emergency") return AdmissionType::Emergency;
    if (s == "urgent") return AdmissionType::Urgent;
    if (s == "elective") return AdmissionType::Elective;
    if (s == "newborn") return AdmissionType::Newborn;
    throw DataError("unknown admission type: '" + std::string(text) + "'");
}

const char* to_string(AdmissionType type) {
    switch (type) {
        case AdmissionType::Emergency: return "EMERGENCY";
        case AdmissionType::Urgent: return "URGENT";
        case AdmissionType::Elective: return "ELECTIVE";
        case AdmissionType::Newborn: return "NEWBORN";
    }
    return "EMERGENCY";
}

std::vector<AdmissionRecord> parse_admissions(std::istream& in, const std::string& name) {
    CsvReader reader(in, name);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError(name + ": missing header row");
    CsvHeader header(fields);
    const std::size_t c_row = header.require("ROW_ID", name);
    const std::size_t c_subject = header.require("SUBJECT_ID", name);
    const std::size_t c_hadm = header.require("HADM_ID", name);
    const std::size_t c_admit = header.require("ADMITTIME", name);
    const std::size_t c_disch = header.require("DISCHTIME", name);
    const std::size_t c_death = header.require("DEATHTIME", name);
    const std::size_t c_type = header.require("ADMISSION_TYPE", name);
    const std::size_t c_expire = header.require("HOSPITAL_EXPIRE_FLAG", name);
    const std::size_t width = fields.size();

    std::vector<AdmissionRecord> records;
    while (reader.next(fields)) {
        const std::size_t row = reader.record_number();
        if (fields.size() != width)
            throw DataError(name + ": row " + std::to_string(row) + ": expected " +
                            std::to_string(width) + " fields, got " + std::to_string(fields.size()));
        AdmissionRecord rec;
        rec.row_id = parse_id(fields[c_row], name, row, "ROW_ID");
        rec.subject_id = parse_id(fields[c_subject], name, row, "SUBJECT_ID");
        rec.hadm_id = parse_id(fields[c_hadm], name, row, "HADM_ID");
        rec.admit_time = parse_time_field(fields[c_admit], name, row, "ADMITTIME");
        rec.discharge_time = parse_time_field(fields[c_disch], name, row, "DISCHTIME");
        if (!trim(fields[c_death]).empty())
            rec.death_time = parse_time_field(fields[c_death], name, row, "DEATHTIME");
        try {
            rec.admission_type = parse_admission_type(fields[c_type]);
        } catch (const DataError& e) {
            field_error(name, row, "ADMISSION_TYPE", e.what());
        }
        std::string flag = trim(fields[c_expire]);
        if (flag == "0")
            rec.hospital_expire_flag = false;
        else if (flag == "1")
            rec.hospital_expire_flag = true;
        else
            field_error(name, row, "HOSPITAL_EXPIRE_FLAG", "expected 0 or 1, got '" + flag + "'");
        if (rec.admit_time > rec.discharge_time)
            field_error(name, row, "DISCHTIME", "discharge precedes admission");
        if (rec.hospital_expire_flag && !rec.death_time)
            field_error(name, row, "DEATHTIME", "expire flag set but no death time");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<NoteRecord> parse_notes(std::istream& in, const std::string& name,
                                    const std::string& category_filter) {
    CsvReader reader(in, name);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError(name + ": missing header row");
    CsvHeader header(fields);
    const std::size_t c_row = header.require("ROW_ID", name);
    const std::size_t c_subject = header.require("SUBJECT_ID", name);
    const std::size_t c_hadm = header.require("HADM_ID", name);
    const std::size_t c_category = header.require("CATEGORY", name);
    const std::size_t c_text = header.require("TEXT", name);
    const std::size_t width = fields.size();
    const std::string wanted = to_lower(trim(category_filter));

    std::vector<NoteRecord> records;
    while (reader.next(fields)) {
        const std::size_t row = reader.record_number();
        if (fields.size() != width)
            throw DataError(name + ": row " + std::to_string(row) + ": expected " +
                            std::to_string(width) + " fields, got " + std::to_string(fields.size()));
        if (to_lower(trim(fields[c_category])) != wanted) continue;
        if (fields[c_text].empty()) continue;
        NoteRecord rec;
        rec.row_id = parse_id(fields[c_row], name, row, "ROW_ID");
        rec.subject_id = parse_id(fields[c_subject], name, row, "SUBJECT_ID");
        rec.hadm_id = parse_id(fields[c_hadm], name, row, "HADM_ID");
        rec.category = trim(fields[c_category]);
        rec.text = fields[c_text];
        records.push_back(std::move(rec));
    }
    return records;
}

LabelResult readmission_label(const std::vector<AdmissionRecord>& admissions, std::size_t index,
                              int window_days) {
    if (index >= admissions.size())
        throw ContractError("readmission_label: index out of range");
    if (window_days <= 0) throw ContractError("readmission_label: window must be positive");
    for (std::size_t i = 1; i < admissions.size(); ++i)
        if (admissions[i - 1].admit_time > admissions[i].admit_time)
            throw ContractError("readmission_label: admissions not sorted by admit time");

    const Timestamp discharged = admissions[index].discharge_time;
    for (std::size_t i = index + 1; i < admissions.size(); ++i) {
        if (admissions[i].admission_type == AdmissionType::Elective) continue;
        double interval =
            static_cast<double>(admissions[i].admit_time - discharged) / kSecondsPerDay;
        if (interval <= static_cast<double>(window_days))
            return {true, std::max(interval, 0.0)};
        return {false, std::nullopt};
    }
    return {false, std::nullopt};
}

Cohort build_cohort(const std::vector<AdmissionRecord>& admissions,
                    const std::vector<NoteRecord>& notes, int window_days) {
    if (window_days <= 0) throw ContractError("build_cohort: window must be positive");

    Cohort cohort;
    cohort.stats.input_admissions = admissions.size();
    cohort.stats.interval_histogram.assign(static_cast<std::size_t>(window_days) + 1, 0);

    std::set<std::int64_t> seen_hadm;
    for (const AdmissionRecord& a : admissions)
        if (!seen_hadm.insert(a.hadm_id).second)
            throw DataError("duplicate hadm_id among admissions: " + std::to_string(a.hadm_id));

    // (subject_id, hadm_id) -> matching summary count and the single text
    struct SummarySlot {
        std::uint32_t count = 0;
        std::string text;
    };
    std::map<std::pair<std::int64_t, std::int64_t>, SummarySlot> summaries;
    for (const NoteRecord& n : notes) {
        SummarySlot& slot = summaries[{n.subject_id, n.hadm_id}];
        if (++slot.count == 1)
            slot.text = n.text;
        else
            slot.text.clear();
    }

    std::map<std::int64_t, std::vector<AdmissionRecord>> by_patient;
    for (const AdmissionRecord& a : admissions) by_patient[a.subject_id].push_back(a);
    for (auto& [subject_id, list] : by_patient)
        std::sort(list.begin(), list.end(), [](const AdmissionRecord& x, const AdmissionRecord& y) {
            if (x.admit_time != y.admit_time) return x.admit_time < y.admit_time;
            return x.hadm_id < y.hadm_id;
        });

    for (const auto& [subject_id, list] : by_patient) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const AdmissionRecord& a = list[i];
            if (a.admission_type == AdmissionType::Newborn) {
                ++cohort.stats.excluded_newborn;
                continue;
            }
            if (a.hospital_expire_flag) {
                ++cohort.stats.excluded_expired;
                continue;
            }
            auto slot = summaries.find({a.subject_id, a.hadm_id});
            const std::uint32_t summary_count = slot == summaries.end() ? 0 : slot->second.count;
            if (summary_count == 0) {
                ++cohort.stats.excluded_no_summary;
                continue;
            }
            if (summary_count > 1) {
                ++cohort.stats.excluded_multiple_summaries;
                continue;
            }
            LabelResult result = readmission_label(list, i, window_days);
            Subject subject;
            subject.hadm_id = a.hadm_id;
            subject.subject_id = a.subject_id;
            subject.summary_text = slot->second.text;
            subject.label = result.label;
            subject.interval_days = result.interval_days;
            if (result.label) {
                ++cohort.stats.positive_count;
                auto bucket = static_cast<std::size_t>(std::floor(*result.interval_days));
                bucket = std::min(bucket, cohort.stats.interval_histogram.size() - 1);
                ++cohort.stats.interval_histogram[bucket];
            }
            cohort.subjects.push_back(std::move(subject));
        }
    }

    std::sort(cohort.subjects.begin(), cohort.subjects.end(),
              [](const Subject& x, const Subject& y) { return x.hadm_id < y.hadm_id; });
    cohort.stats.retained_count = cohort.subjects.size();
    return cohort;
}

void write_cohort(std::ostream& out, const std::vector<Subject>& subjects) {
    for (const Subject& s : subjects) {
        nlohmann::ordered_json row;
        row["hadm_id"] = s.hadm_id;
        row["subject_id"] = s.subject_id;
        row["label"] = s.label;
        if (s.interval_days)
            row["interval_days"] = *s.interval_days;
        else
            row["interval_days"] = nullptr;
        row["summary_text"] = s.summary_text;
        out << row.dump() << '\n';
    }
}

std::vector<Subject> read_cohort(std::istream& in, const std::string& name) {
    std::vector<Subject> subjects;
    std::set<std::int64_t> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            nlohmann::json row = nlohmann::json::parse(line);
            Subject s;
            s.hadm_id = row.at("hadm_id").get<std::int64_t>();
            s.subject_id = row.at("subject_id").get<std::int64_t>();
            s.label = row.at("label").get<bool>();
            if (!row.at("interval_days").is_null())
                s.interval_days = row.at("interval_days").get<double>();
            s.summary_text = row.at("summary_text").get<std::string>();
            if (s.label != s.interval_days.has_value())
                throw DataError(name + ": line " + std::to_string(line_number) +
                                ": label and interval_days disagree");
            if (s.interval_days && *s.interval_days < 0.0)
                throw DataError(name + ": line " + std::to_string(line_number) +
                                ": negative interval");
            if (!seen.insert(s.hadm_id).second)
                throw DataError(name + ": line " + std::to_string(line_number) +
                                ": duplicate hadm_id " + std::to_string(s.hadm_id));
            subjects.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(name + ": line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return subjects;
}

void write_cohort_stats(std::ostream& out, const CohortStats& stats) {
    nlohmann::ordered_json doc;
    doc["input_admissions"] = stats.input_admissions;
    doc["exclusions"]["newborn"] = stats.excluded_newborn;
    doc["exclusions"]["expired"] = stats.excluded_expired;
    doc["exclusions"]["no_summary"] = stats.excluded_no_summary;
    doc["exclusions"]["multiple_summaries"] = stats.excluded_multiple_summaries;
    doc["retained"] = stats.retained_count;
    doc["positives"] = stats.positive_count;
    doc["positive_rate"] =
        stats.retained_count == 0
            ? 0.0
            : static_cast<double>(stats.positive_count) / static_cast<double>(stats.retained_count);
    nlohmann::ordered_json histogram = nlohmann::ordered_json::array();
    for (std::size_t d = 0; d < stats.interval_histogram.size(); ++d) {
        nlohmann::ordered_json bucket;
        bucket["days"] = d;
        bucket["count"] = stats.interval_histogram[d];
        histogram.push_back(std::move(bucket));
    }
    doc["interval_histogram"] = std::move(histogram);
    out << doc.dump(2) << '\n';
}

}  // namespace readmit
