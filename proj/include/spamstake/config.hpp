#ifndef SPAMSTAKE_CONFIG_HPP
#define SPAMSTAKE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spamstake/sim.hpp"

namespace spamstake {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved run configuration. Every field has a default; values from
// a config file override defaults, CLI flags override the file.
struct RunConfig {
    std::string dataset_path = "data/dataset.csv";
    std::string whois_fixture_path = "data/whois.csv";  // empty -> null client
    int64_t whois_default_days = 0;
    double base_fraction = 0.25;
    double good_fraction = 0.55;
    uint64_t seed = 42;
    int rounds = 50;
    std::vector<ActorSpec> actors;
    LedgerParams ledger;
    TrainConfig train;
    std::string out_dir = "out";
};

// Two good actors and one bad actor, the reference roster.
RunConfig default_config();

// Parses a JSON config file; unset fields keep their defaults.
RunConfig load_config(const std::string& path);

// Deterministic serialization; parsing it back reproduces the config
// exactly (this is what config.echo contains).
std::string config_to_text(const RunConfig& config);
RunConfig config_from_text(const std::string& text);

}  // namespace spamstake

#endif
