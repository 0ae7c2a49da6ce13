#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace readmit {

/// Streaming RFC-4180 reader: quoted fields, doubled-quote escapes, embedded
/// newlines, CRLF or LF record ends. Single pass, one record in memory.
class CsvReader {
public:
    /// `name` is used in diagnostics only.
    CsvReader(std::istream& in, std::string name);

    /// Reads the next record into `fields`. Returns false at end of input.
    /// Throws ParseError (with byte offset) on unbalanced quoting.
    bool next(std::vector<std::string>& fields);

    /// 1-based index of the record most recently returned by next()
    /// (the header row of a table is record 1).
    std::size_t record_number() const { return record_number_; }

    const std::string& name() const { return name_; }

private:
    std::istream& in_;
    std::string name_;
    std::size_t offset_ = 0;        // bytes consumed
    std::size_t record_number_ = 0;
    bool eof_ = false;

    int get();
    int peek();
};

/// Header lookup that resolves column names case-insensitively.
class CsvHeader {
public:
    explicit CsvHeader(const std::vector<std::string>& fields);

    /// Index of `column`, or throws ParseError naming the missing column.
    std::size_t require(const std::string& column, const std::string& table_name) const;

    std::optional<std::size_t> find(const std::string& column) const;

private:
    std::unordered_map<std::string, std::size_t> index_;
};

/// ASCII trim + lowercase helpers shared by parsers.
std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

}  // namespace readmit
