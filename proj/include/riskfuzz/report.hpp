#pragma once

#include <string>
#include <vector>

namespace riskfuzz {

/// Fixed-width text table with a header row.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> headers);
    void add_row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_real(double v, int precision = 4);

/// Writes atomically: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace riskfuzz
