#pragma once

// Batch scans. A scan is a list of independent cells; each cell is determined
// by (RunSpec, cell index) and yields one CSV row. Wall-clock times go to a
// separate table so the main rows stay reproducible.

#include "indturan/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace indturan {

struct RunSpec {
    std::string id = "scan";
    /// construction-scaling | embed-threshold | even-cycle
    std::string experiment = "construction-scaling";
    Seed seed = 1;
    std::size_t seeds = 1;

    // [graph]
    std::string family = "gnp";  // gnp | paley | clique-union
    std::vector<std::size_t> n;
    double p = 0.5;
    std::size_t clique = 4;

    // [pattern]
    std::size_t s = 2, r = 2;
    std::string pattern = "bip l=1 B=2";

    // [constants]
    double c = 0.5, t = 8, C = 1;

    // [embed]
    std::vector<double> densities;
    std::size_t apex_budget = 32, tuple_budget = 64;

    // [probe]
    std::size_t ell = 2;
    std::vector<std::size_t> oracle_n;
    double envelope_C = 4;
    double oracle_seconds = 10;
};

/// Throws InputError on syntax errors, unknown keys and out-of-range values.
RunSpec parse_runspec(const std::string& toml_text);
RunSpec load_runspec(const std::string& path);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct SlopeFit {
    double slope = 0, intercept = 0, stderr_slope = 0;
    std::size_t points = 0;
};

/// Least squares of log y on log x; points with x <= 0 or y <= 0 are skipped.
/// Needs two distinct x values, otherwise nullopt.
std::optional<SlopeFit> fit_loglog(const std::vector<std::pair<double, double>>& xy);

struct ScanResult {
    std::string id;
    std::string comment;  // schema line written as "# ..."
    Table table;
    Table timing;
    std::size_t errors = 0;
    std::optional<SlopeFit> fit;
};

std::size_t cell_count(const RunSpec& spec);
/// The row for one cell; never throws for cell-level failures (they become error rows).
std::vector<std::string> run_cell(const RunSpec& spec, std::size_t cell);
std::vector<std::string> scan_header(const RunSpec& spec);

ScanResult scan_construction_scaling(const RunSpec& spec, unsigned workers = 0);
ScanResult scan_embed_threshold(const RunSpec& spec, unsigned workers = 0);
ScanResult probe_even_cycle(const RunSpec& spec, unsigned workers = 0);
/// Dispatches on spec.experiment.
ScanResult run_scan(const RunSpec& spec, unsigned workers = 0);

std::string csv_field(const std::string& s);
void write_csv(std::ostream& out, const Table& table, const std::string& comment = {});
/// Writes <dir>/<id>.csv and <dir>/<id>.timing.csv; returns the main path.
std::string write_scan(const ScanResult& result, const std::string& dir);

}  // namespace indturan
