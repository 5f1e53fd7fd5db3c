#ifndef INJ_CONFIG_HPP
#define INJ_CONFIG_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "inj/certify.hpp"
#include "inj/witness.hpp"

namespace inj {

inline constexpr const char* kToolVersion = "0.1.0";

// A validated problem description file.  Unknown fields are rejected so
// criterion-name typos fail loudly instead of silently running defaults.
struct ProblemConfig {
    std::string kind;  // "complex" | "real_map"
    std::vector<std::string> variables;
    std::vector<std::string> components;
    Box domain;
    std::string criterion;  // empty when the command does not need one
    std::optional<double> gamma;
    std::optional<std::complex<double>> w1;
    std::optional<std::complex<double>> w2;
    std::optional<std::vector<double>> a_rowmajor;
    Budget budget;
    OracleOptions oracle;
    nlohmann::ordered_json echo;  // the raw parsed document, for reports
};

ProblemConfig parse_config(const nlohmann::ordered_json& doc);
ProblemConfig load_config(const std::string& path);

// Builds the MapSpec (expanding the "holo:" shorthand when present).
MapSpec build_map(const ProblemConfig& cfg);

struct RunFlags {
    int threads = 0;  // <= 0 leaves the OpenMP default untouched
    std::optional<int> max_depth;
    std::optional<std::uint64_t> max_boxes;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> emit_grid;
};

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 1;
};

// Command entry points used by both the CLI binary and the tests.
// Configuration problems throw (exit code 2 at the CLI); numeric failures
// are folded into the report as UNKNOWN with an explanation.
RunResult run_certify(const ProblemConfig& cfg, const RunFlags& flags);
RunResult run_witness(const ProblemConfig& cfg, const RunFlags& flags);
RunResult run_falsify(const ProblemConfig& cfg, const RunFlags& flags);
RunResult run_monotone(const ProblemConfig& cfg, const RunFlags& flags);

} // namespace inj

#endif
