#include "lds/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lds {

CsvWriter::CsvWriter(std::ostream& os, std::span<const std::string> columns)
    : os_(os), columns_(columns.size()) {
    os_ << csv_banner << '\n';
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) os_ << ',';
        os_ << columns[i];
    }
    os_ << '\n';
}

std::string CsvWriter::format(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != columns_)
        throw std::logic_error("csv row width does not match header");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os_ << ',';
        os_ << format(values[i]);
    }
    os_ << '\n';
}

CsvParseError::CsvParseError(int line_no, const std::string& message)
    : std::runtime_error("csv line " + std::to_string(line_no) + ": " + message),
      line(line_no) {}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string& s, int line_no, const std::string& what) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw CsvParseError(line_no, "cannot parse " + what + " from '" + s + "'");
    }
    if (used != s.size())
        throw CsvParseError(line_no, "trailing characters in " + what + " '" + s + "'");
    return v;
}

}  // namespace

ObservedSeries read_observed_series(std::istream& in) {
    ObservedSeries series;
    std::string line;
    int line_no = 0;
    int col_n = -1, col_p0 = -1, col_sigma = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (col_n < 0) {
            for (size_t i = 0; i < fields.size(); ++i) {
                const auto name = lower(fields[i]);
                if (name == "n") col_n = static_cast<int>(i);
                if (name == "p0") col_p0 = static_cast<int>(i);
                if (name == "sigma") col_sigma = static_cast<int>(i);
            }
            if (col_n < 0 || col_p0 < 0)
                throw CsvParseError(line_no, "header must name columns N and P0");
            continue;
        }
        const size_t needed = static_cast<size_t>(
            std::max({col_n, col_p0, col_sigma < 0 ? 0 : col_sigma}) + 1);
        if (fields.size() < needed)
            throw CsvParseError(line_no, "expected at least " + std::to_string(needed) +
                                             " fields, found " +
                                             std::to_string(fields.size()));
        const double n = parse_double(fields[static_cast<size_t>(col_n)], line_no, "N");
        if (n < 0 || n != std::floor(n))
            throw CsvParseError(line_no, "N must be a non-negative integer");
        series.pulses.push_back(static_cast<int>(n));
        series.p0.push_back(
            parse_double(fields[static_cast<size_t>(col_p0)], line_no, "P0"));
        if (col_sigma >= 0)
            series.sigma.push_back(
                parse_double(fields[static_cast<size_t>(col_sigma)], line_no, "sigma"));
    }
    if (col_n < 0) throw CsvParseError(line_no, "missing header row");
    try {
        series.validate();
    } catch (const std::domain_error& err) {
        throw CsvParseError(line_no, err.what());
    }
    return series;
}

ObservedSeries read_observed_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return read_observed_series(in);
}

}  // namespace lds
