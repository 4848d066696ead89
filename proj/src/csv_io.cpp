#include "aggts/csv_io.hpp"
#include "aggts/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace aggts {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool is_na_token(const std::string& s) {
    return s.empty() || s == "NA" || s == "NaN" || s == "nan";
}

} // namespace

DailySeries load_series(const std::string& path, const std::string& date_column,
                        const std::string& value_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file '" + path + "'");
    const auto header = split_csv_line(line);

    int date_idx = -1, value_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto name = trim(header[i]);
        if (name == date_column) date_idx = static_cast<int>(i);
        if (name == value_column) value_idx = static_cast<int>(i);
    }
    if (date_idx < 0)
        throw DataError("column '" + date_column + "' not found in '" + path + "'");
    if (value_idx < 0)
        throw DataError("column '" + value_column + "' not found in '" + path + "'");

    std::vector<std::pair<Date, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= static_cast<std::size_t>(std::max(date_idx, value_idx)))
            throw DataError(path + ":" + std::to_string(line_no) + ": too few fields");
        const Date d = parse_date(trim(fields[static_cast<std::size_t>(date_idx)]));
        const std::string raw = trim(fields[static_cast<std::size_t>(value_idx)]);
        double v = DailySeries::na;
        if (!is_na_token(raw)) {
            auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (ec != std::errc{} || p != raw.data() + raw.size())
                throw DataError(path + ":" + std::to_string(line_no) +
                                ": unparseable value '" + raw + "'");
        }
        rows.emplace_back(d, v);
    }
    if (rows.empty()) throw DataError("no data rows in '" + path + "'");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw DataError("duplicate date " + format_date(rows[i].first) + " in '" +
                            path + "'");

    const Date start = rows.front().first;
    const auto n = static_cast<std::size_t>(rows.back().first - start) + 1;
    DailySeries out;
    out.start = start;
    out.values.assign(n, DailySeries::na);
    out.missing.assign(n, 1);
    for (const auto& [d, v] : rows) {
        const auto idx = static_cast<std::size_t>(d - start);
        out.values[idx] = v;
        out.missing[idx] = std::isnan(v) ? 1 : 0;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw DataError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

void write_series_csv(const std::string& path, const DailySeries& series,
                      const std::string& date_column, const std::string& value_column) {
    std::ostringstream out;
    out << date_column << ',' << value_column << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i)) continue;
        out << format_date(series.date_at(i)) << ',' << format_double(series.values[i])
            << '\n';
    }
    atomic_write_text(path, out.str());
}

} // namespace aggts
