#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace icslab {

/// General-format rendering with 12 significant digits and '.' as
/// the decimal separator regardless of locale. NaN renders as "".
std::string format_number(double value);

/// Accumulates an RFC 4180 table in memory (LF line endings) and writes
/// it in one go.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    /// Throws InvalidArgument when the field count differs from the header.
    void add_row(std::vector<std::string> fields);

    std::size_t row_count() const { return rows_.size(); }
    std::string str() const;
    /// Throws IoError when the file cannot be written.
    void write(const std::filesystem::path& file) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace icslab
