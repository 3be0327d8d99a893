#ifndef CERESA_CLI_SUPPORT_HPP
#define CERESA_CLI_SUPPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ceresa/volume.hpp"

namespace ceresa::cli {

enum class OutputFormat { json, csv, human };

// JSON schema is a fixed contract: field names and order are stable.
std::string certificate_to_json(const volume::Certificate& c);
volume::Certificate certificate_from_json(const std::string& text);

std::string csv_header();
std::string certificate_to_csv_row(const volume::Certificate& c, double seconds);
std::string certificate_to_human(const volume::Certificate& c);

struct ScanConfig {
    std::int64_t from = 5, to = 50;
    std::int64_t k = 1;        // ignored when k_max is set
    bool k_max = false;        // k from 1 to max(1,(N-3)/2)
    volume::Precision precision = volume::Precision::standard;
    double target_frac_error = 1e-9;
    double margin_factor = 10.0;
    int threads = 1;
    OutputFormat output = OutputFormat::csv;
    bool redact_timing = false; // print 0.000 in the seconds column
};

void validate(const ScanConfig& cfg);

// Streams one certificate per (N,k), ordered by N then k; per-N failures
// become inconclusive rows and the scan continues.  Returns the exit
// code (0 all nontrivial, 2 any inconclusive).
int run_scan(const ScanConfig& cfg, std::ostream& data, std::ostream& log);

struct SelftestConfig {
    std::string suite = "all"; // shuffle|pathproduct|gauss|dixon|dualpath|period|all
    int trials = 100;
    std::int64_t n = 7;
    std::uint64_t seed = 20240901;
};

// Runs the oracle/property suites, printing one residual line per suite.
// Returns 0 on success, 3 with named failures otherwise.
int run_selftest(const SelftestConfig& cfg, std::ostream& out);

} // namespace ceresa::cli

#endif
