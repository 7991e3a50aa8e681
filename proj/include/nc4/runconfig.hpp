#pragma once

// CLI plumbing: key = value run configuration, a versioned text cache
// for boundary solutions, and provenance hashing for emitted files.

#include "nc4/boundary_solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nc4 {

struct RunConfig {
    ModelParams params;
    SolverConfig solver;

    int widder_n_max = 4;
    double x_max = 50.0;  // probe range for the positivity suites
    double a_max = 10.0;  // lattice extent for gab / diag
    int lattice_n = 20;

    double r_min = 0.1, r_max = 5.0;
    int r_n = 20;

    double a_fit_min = 1e2, a_fit_max = 1e4;
    int fit_n = 24;

    std::string provider = "free"; // free | gaussian | diagonal | tabulated
    double gaussian_width = 0.02;
    std::string table_path;     // tabulated-provider input
    std::string positions_path; // npoint / cluster positions
    std::string input_table;    // two-column x,f input for widder / cm
    std::vector<double> taus = {5.0, 10.0, 20.0, 50.0};
    std::vector<double> volumes = {1e2, 1e4, 1e6};

    std::string output = "out.csv";
    std::string cache = "cache.txt";
};

// Parse `key = value` lines ('#' starts a comment). Unknown keys and
// malformed values throw std::invalid_argument.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Canonical one-value-per-line echo of the parsed config; equal
// configs serialize identically regardless of source formatting.
std::string config_echo(const RunConfig& config);

// FNV-1a (64-bit) as a hex string; used for provenance headers.
std::string fnv1a_hex(const std::string& data);

struct CacheMismatch : std::runtime_error {
    explicit CacheMismatch(const std::string& what)
        : std::runtime_error(what) {}
};

// Versioned text cache of a boundary solution: all doubles with 17
// significant digits, so write-then-read is bit-exact.
void write_cache(const BoundarySolution& solution, const std::string& path,
                 const std::string& provenance);
BoundarySolution read_cache(const std::string& path);

// Header line prepended to CSV outputs.
std::string provenance_header(const RunConfig& config);

} // namespace nc4
