#include "icslab/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "icslab/error.hpp"

namespace icslab {

namespace {

void append_field(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        append_field(out, fields[i]);
    }
    out += '\n';
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return {};
    if (value == 0.0) return "0";  // folds -0
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
    if (fields.size() != header_.size()) throw InvalidArgument("CsvTable: field count mismatch");
    rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const {
    std::string out;
    append_row(out, header_);
    for (const auto& row : rows_) append_row(out, row);
    return out;
}

void CsvTable::write(const std::filesystem::path& file) const {
    std::ofstream stream(file, std::ios::binary | std::ios::trunc);
    if (!stream) throw IoError("cannot open '" + file.string() + "' for writing");
    const std::string text = str();
    stream.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!stream) throw IoError("failed writing '" + file.string() + "'");
}

}  // namespace icslab
