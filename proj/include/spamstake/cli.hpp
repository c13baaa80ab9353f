#ifndef SPAMSTAKE_CLI_HPP
#define SPAMSTAKE_CLI_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "spamstake/config.hpp"

namespace spamstake {

// Exit codes: 0 success, 1 usage error, 2 runtime error. Diagnostics name
// the failing stage. Nothing is written to the output directory on error.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, const std::vector<size_t>& sizes,
              std::ostream& out, std::ostream& err);
int cmd_extract(const std::string& url, const RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace spamstake

#endif
