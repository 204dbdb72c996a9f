#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gff/schur.hpp"

namespace gff {

inline constexpr const char* kToolName = "gff-verify";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Command {
    VerifyStructure,
    VerifySpaceform,
    VerifyChart,
    SchurScan,
    ErratumGuard,
};

const char* command_name(Command c);

struct RunConfig {
    Command command = Command::VerifySpaceform;
    int n = 2;
    int s = 1;
    std::vector<int> eps = {1};
    double c = 1.0;
    std::pair<int, int> phi_signature = {-1, -1};  // (-1,-1) means (n,0)
    std::string example;                           // builtin chart id
    std::string file;                              // declarative chart path
    int npoints = 10;
    std::uint64_t seed = kDefaultSeed;
    Tolerances tol;
    bool sweep = false;        // verify-spaceform: run the full parameter grid
    double perturb = 0.0;      // symmetric Ricci perturbation scale (rejection path)
    std::optional<double> expect_h;
    std::optional<double> expect_c;
    std::string out_path;      // structured report destination ("" = none)
};

// throws ConfigError on invalid input (maps to exit code 2)
void validate_config(const RunConfig& cfg);

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    std::string command;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    // stable structured format; byte-identical for identical config and seed
    std::string to_json(const RunConfig& cfg) const;
    std::string to_text(const RunConfig& cfg) const;
};

VerificationReport run(const RunConfig& cfg);

// 0 when every check passed, 1 otherwise; invalid input throws before this
int report_exit_code(const VerificationReport& rep);

// parse an eps spec like "+-" or "+,-" into ±1 signs
std::vector<int> parse_eps(const std::string& text);

// JSON config file with the same field names as the CLI flags
RunConfig load_config_file(const std::string& path, const RunConfig& base);

}  // namespace gff
