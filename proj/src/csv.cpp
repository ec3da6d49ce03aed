#include "ide/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ide/error.hpp"

namespace ide::csv {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(ErrorCode::InvalidArgument, "no column named '" + std::string(name) + "'");
}

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << row[i];
    }
    os << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write(const std::filesystem::path& path, const Table& table) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    write_row(os, table.header);
    for (const auto& row : table.rows) write_row(os, row);
}

Table read(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
    Table t;
    std::string line;
    if (std::getline(is, line)) t.header = split(line);
    while (std::getline(is, line)) {
        if (!line.empty()) t.rows.push_back(split(line));
    }
    return t;
}

}  // namespace ide::csv
