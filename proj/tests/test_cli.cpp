#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ceresa/cli_support.hpp"
#include "ceresa/volume.hpp"

using namespace ceresa;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_out.tmp";
    const std::string cmd =
        std::string(CERESA_CLI_PATH) + " " + args + " > " + out_path + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(out_path.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

} // namespace

TEST_CASE("certificate JSON round-trips byte-identically") {
    const auto cert = volume::make_verdict(volume::CurveDesc::fermat(7), 1);
    const auto text = cli::certificate_to_json(cert);
    const auto parsed = cli::certificate_from_json(text);
    CHECK(cli::certificate_to_json(parsed) == text);
    CHECK(parsed.curve.n == 7);
    CHECK(parsed.value.value == cert.value.value);

    const auto qc = volume::make_verdict(volume::CurveDesc::quotient(7, 2), 1);
    const auto qt = cli::certificate_to_json(qc);
    CHECK(cli::certificate_to_json(cli::certificate_from_json(qt)) == qt);
    CHECK(qt.find("\"type\":\"quotient\"") != std::string::npos);
    CHECK(qt.find("\"m\":2") != std::string::npos);
}

TEST_CASE("csv shape") {
    CHECK(cli::csv_header() == "N,k,value,frac_distance,abs_error,verdict,seconds");
    const auto cert = volume::make_verdict(volume::CurveDesc::fermat(7), 1);
    const auto row = cli::certificate_to_csv_row(cert, 0.25);
    CHECK(row.rfind("7,1,", 0) == 0);
    CHECK(row.find("nontrivial_numerical") != std::string::npos);
}

TEST_CASE("scan config validation") {
    cli::ScanConfig bad;
    bad.from = 2;
    CHECK_THROWS_AS(cli::validate(bad), std::invalid_argument);
    bad = {};
    bad.target_frac_error = 1.0;
    CHECK_THROWS_AS(cli::validate(bad), std::invalid_argument);
}

TEST_CASE("cli verify fermat") {
    const auto r = run_cli("verify fermat --n 7 --k 1 --output json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"verdict\":\"nontrivial_numerical\"") != std::string::npos);
    const auto parsed = cli::certificate_from_json(r.out);
    CHECK(parsed.curve.n == 7);
}

TEST_CASE("cli verify fermat 8 k=2") {
    const auto r = run_cli("verify fermat --n 8 --k 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("nontrivial_numerical") != std::string::npos);
}

TEST_CASE("cli verify quotient rejects N != 1 mod 3") {
    const auto r = run_cli("verify quotient --n 5 --m 2");
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli usage error exits 64") {
    const auto r = run_cli("verify fermat --no-such-flag");
    CHECK(r.exit_code == 64);
}

TEST_CASE("cli scan rows and summary") {
    const auto r = run_cli("scan --from 5 --to 10 --redact-timing");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == cli::csv_header());
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("cli scan k=max covers (7,1),(7,2),(8,1),(8,2)") {
    const auto r = run_cli("scan --from 7 --to 8 --k max --redact-timing");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\n7,1,") != std::string::npos);
    CHECK(r.out.find("\n7,2,") != std::string::npos);
    CHECK(r.out.find("\n8,1,") != std::string::npos);
    CHECK(r.out.find("\n8,2,") != std::string::npos);
}

TEST_CASE("cli scan output independent of thread count") {
    const auto a = run_cli("scan --from 5 --to 12 --threads 1 --redact-timing");
    const auto b = run_cli("scan --from 5 --to 12 --threads 4 --redact-timing");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli selftest quick suites") {
    const auto r = run_cli("selftest --suite gauss --trials 20");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("config file via CERESA_CHECK_CONFIG") {
    {
        std::ofstream cfg("cli_cfg.tmp");
        cfg << "margin-factor=25\n";
    }
    const std::string cmd = std::string("CERESA_CHECK_CONFIG=cli_cfg.tmp ") +
                            CERESA_CLI_PATH +
                            " verify fermat --n 7 --output json > cli_cfg_out.tmp";
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    std::remove("cli_cfg.tmp");
    std::remove("cli_cfg_out.tmp");
}
