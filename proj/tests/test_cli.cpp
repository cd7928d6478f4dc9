#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string cli = LDS_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "lds_cli_test_out.txt";
    const std::string cmd = cli + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of("0123456789+-.eE,") != std::string::npos) {
            if (header) *header = line;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) row.push_back(std::strtod(field.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("simulate emits one row per pulse including the initial state") {
    const auto r = run("simulate --veff 0.1 --pulses 40 --basis 255 --kreport 6");
    REQUIRE(r.exit_code == 0);
    std::string header;
    const auto rows = parse_csv(r.output, &header);
    CHECK(header == "N,P_-6,P_-5,P_-4,P_-3,P_-2,P_-1,P_0,P_1,P_2,P_3,P_4,P_5,P_6");
    REQUIRE(rows.size() == 41);
    CHECK(rows[0][7] == 1.0);  // P_0 of the initial state
    for (const auto& row : rows) REQUIRE(row.size() == 14);
}

TEST_CASE("simulate with zero depth freezes P0 at one") {
    const auto r = run("simulate --veff 0 --pulses 10 --basis 63");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    for (const auto& row : rows) CHECK(row[7] == 1.0);
}

TEST_CASE("simulate output is byte-identical across runs") {
    const auto a = run("simulate --veff 0.07 --pulses 20 --basis 127");
    const auto b = run("simulate --veff 0.07 --pulses 20 --basis 127");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("analytic method fills the three central columns") {
    const auto r = run("simulate --veff 0.05 --pulses 5 --method analytic --kreport 2");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row[1] == 0.0);                       // P_-2
        CHECK(row[2] == row[4]);                    // P_-1 == P_1
        CHECK(row[2] + row[3] + row[4] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("cutoff flag clamps small populations for log plots") {
    const auto r = run("simulate --veff 0.01 --pulses 3 --basis 63 --cutoff");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    for (const auto& row : rows)
        for (size_t i = 1; i < row.size(); ++i) REQUIRE(row[i] >= 1e-11);
}

TEST_CASE("universal scan covers the requested depths") {
    const auto r = run("universal --veffs 0.05,0.01 --max-nv 0.5 --basis 63");
    REQUIRE(r.exit_code == 0);
    std::string header;
    const auto rows = parse_csv(r.output, &header);
    CHECK(header == "veff,N,N_veff,P0,P0_analytic,P0_quadratic");
    // depths come out sorted: 0.01 first (51 rows), then 0.05 (11 rows)
    REQUIRE(rows.size() == 51 + 11);
    CHECK(rows[0][0] == 0.01);
    CHECK(rows[51][0] == 0.05);
    for (const auto& row : rows) {
        CHECK(row[2] == doctest::Approx(row[0] * row[1]).epsilon(1e-12));
        CHECK(std::abs(row[3] - row[4]) < 0.01);  // collapse onto the closed form
    }
}

TEST_CASE("scan-beta emits the long-format surface") {
    const auto r = run("scan-beta --veff 0.1 --pulses 4 --nbeta 11 --basis 63");
    REQUIRE(r.exit_code == 0);
    std::string header;
    const auto rows = parse_csv(r.output, &header);
    CHECK(header == "beta,N,P0");
    REQUIRE(rows.size() == 11 * 5);
    CHECK(rows[0][0] == -0.5);
    CHECK(rows.back()[0] == 0.5);
}

TEST_CASE("thermal command: tiny width reproduces the beta = 0 simulation") {
    const auto t = run("thermal --veff 0.08 --w 1e-6 --pulses 10 --nbeta 101 --basis 63");
    REQUIRE(t.exit_code == 0);
    const auto s = run("simulate --veff 0.08 --pulses 10 --basis 63 --kreport 0");
    REQUIRE(s.exit_code == 0);
    const auto thermal_rows = parse_csv(t.output);
    const auto sim_rows = parse_csv(s.output);
    REQUIRE(thermal_rows.size() == sim_rows.size());
    for (size_t n = 0; n < thermal_rows.size(); ++n)
        CHECK(std::abs(thermal_rows[n][1] - sim_rows[n][1]) < 1e-6);
}

TEST_CASE("thermal command accepts a width list") {
    const auto r =
        run("thermal --veff 0.1 --w 0.00125,0.0125,0.125 --pulses 5 --nbeta 51 --basis 31");
    REQUIRE(r.exit_code == 0);
    std::string header;
    const auto rows = parse_csv(r.output, &header);
    CHECK(header.substr(0, 2) == "N,");
    REQUIRE(rows.size() == 6);
    REQUIRE(rows[0].size() == 4);
}

TEST_CASE("fit round trip through CSV files") {
    const fs::path dir = fs::temp_directory_path();
    const fs::path data = dir / "lds_fit_data.csv";
    const fs::path resid = dir / "lds_fit_resid.csv";

    auto gen = run("simulate --veff 0.05 --pulses 30 --basis 63 --kreport 0 -o " +
                   data.string());
    REQUIRE(gen.exit_code == 0);
    {
        // rename the P_0 column to the fit reader's schema
        std::ifstream in(data);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        const auto at = text.find("N,P_0");
        REQUIRE(at != std::string::npos);
        text.replace(at, 5, "N,P0");
        std::ofstream out(data);
        out << text;
    }

    const auto fit = run("fit --input " + data.string() +
                         " --model truncated --basis 63 --vmin 0.01 --vmax 0.2 -o " +
                         resid.string());
    REQUIRE(fit.exit_code == 0);
    CHECK(fit.output.find("converged: yes") != std::string::npos);

    const auto vhat_at = fit.output.find("v_eff_hat: ");
    REQUIRE(vhat_at != std::string::npos);
    const double vhat = std::strtod(fit.output.c_str() + vhat_at + 11, nullptr);
    CHECK(std::abs(vhat - 0.05) < 1e-4);

    std::ifstream rf(resid);
    REQUIRE(rf.good());
    std::string banner;
    std::getline(rf, banner);
    CHECK(banner == "# lattice-depth-sim v1");
}

TEST_CASE("fit exit codes") {
    SUBCASE("missing input file is a usage error") {
        const auto r = run("fit --input /nonexistent.csv");
        CHECK(r.exit_code == 2);
    }

    SUBCASE("malformed csv reports the line and exits 2") {
        const fs::path bad = fs::temp_directory_path() / "lds_bad.csv";
        std::ofstream(bad) << "N,P0\n0,1.0\n1,oops\n";
        const auto r = run("fit --input " + bad.string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("line 3") != std::string::npos);
    }

    SUBCASE("exhausted budget exits 3") {
        const fs::path data = fs::temp_directory_path() / "lds_budget.csv";
        std::ofstream out(data);
        out << "N,P0\n";
        for (int n = 0; n <= 20; ++n)
            out << n << ',' << (0.9 + 0.005 * (n % 3)) << '\n';
        out.close();
        const auto r = run("fit --input " + data.string() +
                           " --model analytic --tol 1e-13 --budget 40");
        CHECK(r.exit_code == 3);
        CHECK(r.output.find("converged: no") != std::string::npos);
    }

    SUBCASE("unknown option is a usage error") {
        const auto r = run("simulate --veff 0.1 --pulses 2 --frobnicate");
        CHECK(r.exit_code == 2);
    }

    SUBCASE("invalid physics domain is a usage error") {
        const auto r = run("simulate --veff 0.1 --pulses 5 --basis 64");
        CHECK(r.exit_code == 2);
    }
}
