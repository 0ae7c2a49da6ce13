#include "readmit/csv.hpp"

#include <cctype>

#include "readmit/errors.hpp"

namespace readmit {

CsvReader::CsvReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

int CsvReader::get() {
    int c = in_.get();
    if (c != std::istream::traits_type::eof()) ++offset_;
    return c;
}

int CsvReader::peek() {
    return in_.peek();
}

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    if (eof_) return false;
    if (peek() == std::istream::traits_type::eof()) {
        eof_ = true;
        return false;
    }
    ++record_number_;

    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t quote_open_offset = 0;

    for (;;) {
        int ci = get();
        if (ci == std::istream::traits_type::eof()) {
            if (in_quotes) {
                throw ParseError(name_ + ": unbalanced quote opened at byte " +
                                 std::to_string(quote_open_offset) + " (record " +
                                 std::to_string(record_number_) + ")");
            }
            fields.push_back(std::move(field));
            eof_ = true;
            return true;
        }
        char c = static_cast<char>(ci);
        if (in_quotes) {
            if (c == '"') {
                if (peek() == '"') {
                    get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_was_quoted) {
                    in_quotes = true;
                    field_was_quoted = true;
                    quote_open_offset = offset_ - 1;
                } else {
                    // Stray quote inside an unquoted field.
                    throw ParseError(name_ + ": unexpected quote at byte " +
                                     std::to_string(offset_ - 1) + " (record " +
                                     std::to_string(record_number_) + ")");
                }
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                field_was_quoted = false;
                break;
            case '\r':
                if (peek() == '\n') get();
                [[fallthrough]];
            case '\n':
                fields.push_back(std::move(field));
                return true;
            default:
                field.push_back(c);
        }
    }
}

CsvHeader::CsvHeader(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        index_.emplace(to_lower(trim(fields[i])), i);
    }
}

std::size_t CsvHeader::require(const std::string& column, const std::string& table_name) const {
    auto it = index_.find(to_lower(column));
    if (it == index_.end()) {
        throw ParseError(table_name + ": missing required column " + column);
    }
    return it->second;
}

std::optional<std::size_t> CsvHeader::find(const std::string& column) const {
    auto it = index_.find(to_lower(column));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace readmit
