#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lds/estimator.hpp"

namespace lds {

inline constexpr const char* csv_banner = "# lattice-depth-sim v1";

/// CSV emitter: banner line, column header, then rows with full-precision
/// (17 significant digit) fields.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::span<const std::string> columns);

    void row(std::span<const double> values);

    static std::string format(double value);

private:
    std::ostream& os_;
    size_t columns_ = 0;
};

struct CsvParseError : std::runtime_error {
    CsvParseError(int line, const std::string& message);
    int line = 0;
};

/// Reads an observed series from CSV with columns N, P0 and optional sigma
/// (case-insensitive header; '#' lines ignored).
ObservedSeries read_observed_series(std::istream& in);
ObservedSeries read_observed_series_file(const std::string& path);

}  // namespace lds
