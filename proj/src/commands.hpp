#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamer/hopf.hpp"
#include "tamer/orbifold.hpp"

namespace tamer::detail {

struct Settings {
    std::uint64_t budget_torsion = kTorsionBudget;
    std::size_t budget_dim = kMaxChainDim;
    unsigned threads = 0;
};

struct CommandOutcome {
    int status = 0;  ///< 0 ok, 1 verification failure, 2 input error, 3 budget, 4 internal
    std::string output;
    std::string error;
    std::string budget;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand on a request object; never throws.
CommandOutcome run_command(const std::string& command, const std::string& request, const Settings& settings);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace tamer::detail
