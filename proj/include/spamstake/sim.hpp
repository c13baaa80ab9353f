#ifndef SPAMSTAKE_SIM_HPP
#define SPAMSTAKE_SIM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spamstake/ledger.hpp"
#include "spamstake/rng.hpp"

namespace spamstake {

struct PoolExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Strategy { Good, Bad, RepeatSubmitter, Colluder };

Strategy strategy_from_name(const std::string& name);
const char* strategy_name(Strategy s);

struct ActorSpec {
    std::string id;
    Strategy strategy = Strategy::Good;
    Currency initial_balance = 0;
    Currency stake_per_round = 0;
    int batch_size = 10;
};

struct LedgerParams {
    Currency creator_deposit = 100000;
    double stake_cap_fraction = 0.1;
    Currency inference_fee = 1;
};

struct RoundRecord {
    int round = 0;
    std::string actor;
    Verdict verdict = Verdict::RejectedNegativeWeight;
    double final_weight = 0.0;
    Currency reward_paid = 0;
    std::map<std::string, Currency> balances;  // all actors, post-submission
    Currency contract_balance = 0;
    double accuracy = 0.0;  // production model on the base set
};

struct SimulationTrace {
    std::vector<RoundRecord> per_round;
    std::vector<std::string> actor_ids;  // submission order
    int rounds = 0;
    uint64_t seed = 0;
    double initial_accuracy = 0.0;
    // Round-end snapshots (index r-1 for round r), present even for rounds
    // where every actor was benched.
    std::vector<std::map<std::string, Currency>> round_balances;
    std::vector<Currency> round_contract;
    std::vector<double> round_accuracy;
    std::vector<std::string> events;  // ledger event log
    std::string config_echo;          // fully resolved configuration
};

// Internal draw state shared by all actors (pool cursors, cached batches).
struct DrawState {
    size_t good_cursor = 0;
    size_t bad_cursor = 0;
    std::map<std::string, LabeledUrl> repeat_point;  // per repeat_submitter
    int colluder_round = -1;
    std::vector<LabeledUrl> colluder_batch;  // shared within one round
};

// One batch per the actor's strategy. Good/bad actors consume their pool
// sequentially; a repeat submitter reuses its first point; colluders
// submit the same domains under member-specific urls.
std::vector<LabeledUrl> strategy_draw(const ActorSpec& actor,
                                      const DatasetPartition& partition,
                                      DrawState& state, int round,
                                      SplitMix64& rng);

// Drives the full mechanism: each round every solvent actor stakes,
// submits, is graded by the oracle, and is settled by the ledger.
// Deterministic for a fixed (inputs, seed).
SimulationTrace run_simulation(const DatasetPartition& partition,
                               const std::vector<ActorSpec>& actors, int rounds,
                               const LedgerParams& ledger_params,
                               const TrainConfig& train_config, uint64_t seed,
                               const WhoisClient& whois);

// Writes balances.csv, accuracy.csv, contract.csv, events.log and
// config.echo into out_dir. Byte-identical for identical traces.
void emit_trace(const SimulationTrace& trace, const std::string& out_dir);

}  // namespace spamstake

#endif
