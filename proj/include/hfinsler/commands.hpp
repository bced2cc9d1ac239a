#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace hfinsler::cli {

enum ExitCode : int {
    kExitOk = 0,           ///< success / check passed
    kExitFail = 1,         ///< computed, but the check failed
    kExitInapplicable = 2, ///< formula preconditions not met
    kExitInvalid = 3       ///< invalid input (parse, validation, contract)
};

struct CommandOptions {
    std::string command;    ///< validate | classify | flag | sectional | ricci | go-check | scan | all
    std::string space_path;
    bool json = false;
    bool color = false;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    std::string u, v;       ///< flag
    std::string x, y;       ///< sectional; y also for ricci
    std::string backend = "go";
};

struct CommandOutcome {
    int exit_code = kExitOk;
    std::string text;       ///< human-readable report
    nlohmann::json record;  ///< machine-readable result
};

/// Runs one command. Never throws; every failure maps to an exit code and
/// a record naming the violated contract.
CommandOutcome run_command(const CommandOptions& opts);

/// "0,1,0" -> (0, 1, 0). Throws InvalidInput on malformed entries.
Eigen::VectorXd parse_vector(const std::string& csv);

} // namespace hfinsler::cli
