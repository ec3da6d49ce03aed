#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ide::csv {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;
};

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);

}  // namespace ide::csv
