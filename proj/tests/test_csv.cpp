#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "lds/csv.hpp"

using namespace lds;

TEST_CASE("writer emits the banner, header, and full-precision fields") {
    std::ostringstream out;
    const std::vector<std::string> cols{"N", "P0"};
    CsvWriter csv(out, cols);
    csv.row(std::vector<double>{3.0, 0.1});
    csv.row(std::vector<double>{4.0, 1.0 / 3.0});

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# lattice-depth-sim v1");
    std::getline(in, line);
    CHECK(line == "N,P0");
    std::getline(in, line);
    CHECK(line == "3,0.10000000000000001");

    // round trip is bit exact
    std::getline(in, line);
    const auto comma = line.find(',');
    CHECK(std::strtod(line.substr(comma + 1).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("writer rejects ragged rows") {
    std::ostringstream out;
    const std::vector<std::string> cols{"N", "P0"};
    CsvWriter csv(out, cols);
    CHECK_THROWS_AS(csv.row(std::vector<double>{1.0}), std::logic_error);
}

TEST_CASE("observed series reader") {
    SUBCASE("plain two-column file") {
        std::istringstream in("# lattice-depth-sim v1\nN,P0\n0,1.0\n1,0.99\n2,0.97\n");
        const auto s = read_observed_series(in);
        REQUIRE(s.pulses == std::vector<int>{0, 1, 2});
        CHECK(s.p0[2] == 0.97);
        CHECK(s.sigma.empty());
    }

    SUBCASE("sigma column and case-insensitive header") {
        std::istringstream in("n,p0,SIGMA\n1,0.9,0.01\n2,0.8,0.02\n");
        const auto s = read_observed_series(in);
        REQUIRE(s.sigma.size() == 2);
        CHECK(s.sigma[1] == 0.02);
    }

    SUBCASE("missing header") {
        std::istringstream in("time,value\n0,1\n");
        CHECK_THROWS_AS(read_observed_series(in), CsvParseError);
    }

    SUBCASE("parse errors carry line numbers") {
        std::istringstream in("N,P0\n0,1.0\nx,0.5\n");
        try {
            read_observed_series(in);
            FAIL("expected parse error");
        } catch (const CsvParseError& err) {
            CHECK(err.line == 3);
        }
    }

    SUBCASE("validation failures surface as parse errors") {
        std::istringstream decreasing("N,P0\n5,1.0\n3,0.5\n");
        CHECK_THROWS_AS(read_observed_series(decreasing), CsvParseError);
        std::istringstream range("N,P0\n0,1.5\n");
        CHECK_THROWS_AS(read_observed_series(range), CsvParseError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS(read_observed_series_file("/nonexistent/path.csv"));
    }
}
