#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "readmit/civil_time.hpp"

namespace readmit {

enum class AdmissionType { Emergency, Urgent, Elective, Newborn };

/// Parses an admission-type cell (case-insensitive, trimmed).
/// Throws DataError on unknown values.
AdmissionType parse_admission_type(std::string_view text);
const char* to_string(AdmissionType type);

struct AdmissionRecord {
    std::int64_t row_id = 0;
    std::int64_t subject_id = 0;
    std::int64_t hadm_id = 0;
    Timestamp admit_time = 0;
    Timestamp discharge_time = 0;
    std::optional<Timestamp> death_time;
    AdmissionType admission_type = AdmissionType::Emergency;
    bool hospital_expire_flag = false;
};

struct NoteRecord {
    std::int64_t row_id = 0;
    std::int64_t subject_id = 0;
    std::int64_t hadm_id = 0;
    std::string category;
    std::string text;
};

/// One labeled hospital admission. interval_days is present iff label is
/// true and measures fractional days from this admission's discharge to the
/// qualifying readmission's admit time.
struct Subject {
    std::int64_t hadm_id = 0;
    std::int64_t subject_id = 0;
    std::string summary_text;
    bool label = false;
    std::optional<double> interval_days;
};

struct CohortStats {
    std::uint64_t input_admissions = 0;
    std::uint64_t excluded_newborn = 0;
    std::uint64_t excluded_expired = 0;
    std::uint64_t excluded_no_summary = 0;
    std::uint64_t excluded_multiple_summaries = 0;
    std::uint64_t retained_count = 0;
    std::uint64_t positive_count = 0;
    /// interval_histogram[d] counts positives with floor(interval) == d,
    /// for d in [0, window_days].
    std::vector<std::uint64_t> interval_histogram;
};

/// Reads an admissions CSV. Requires columns ROW_ID, SUBJECT_ID, HADM_ID,
/// ADMITTIME, DISCHTIME, DEATHTIME, ADMISSION_TYPE, HOSPITAL_EXPIRE_FLAG
/// (any order, case-insensitive). Empty DEATHTIME means no death.
/// `name` labels error messages.
std::vector<AdmissionRecord> parse_admissions(std::istream& in, const std::string& name);

/// Reads a notes CSV (ROW_ID, SUBJECT_ID, HADM_ID, CATEGORY, TEXT), keeping
/// rows whose category equals `category_filter` (case-insensitive, trimmed)
/// and whose text is non-empty.
std::vector<NoteRecord> parse_notes(std::istream& in, const std::string& name,
                                    const std::string& category_filter = "Discharge summary");

struct LabelResult {
    bool label = false;
    std::optional<double> interval_days;
};

/// Labels one admission within a patient's history. `admissions` must be
/// sorted ascending by admit_time (ContractError otherwise). Admissions
/// strictly after `index` are scanned; ELECTIVE ones are skipped; the first
/// other admission is the candidate, and the label is true when it starts
/// within `window_days` of the index discharge. Overlapping stays count as
/// immediate readmission (interval clamped to 0).
LabelResult readmission_label(const std::vector<AdmissionRecord>& admissions, std::size_t index,
                              int window_days = 30);

struct Cohort {
    std::vector<Subject> subjects;  // sorted by hadm_id
    CohortStats stats;
};

/// Applies the exclusion cascade (NEWBORN, in-hospital death, no discharge
/// summary, multiple discharge summaries; first match counts) and labels the
/// retained admissions. Excluded admissions still act as readmission events
/// for earlier stays. Notes join to admissions on (subject_id, hadm_id).
/// Throws DataError when two admission rows share a hadm_id.
Cohort build_cohort(const std::vector<AdmissionRecord>& admissions,
                    const std::vector<NoteRecord>& notes, int window_days = 30);

/// JSON-lines persistence, one object per subject:
/// {hadm_id, subject_id, label, interval_days, summary_text}.
void write_cohort(std::ostream& out, const std::vector<Subject>& subjects);
std::vector<Subject> read_cohort(std::istream& in, const std::string& name);

void write_cohort_stats(std::ostream& out, const CohortStats& stats);

}  // namespace readmit
