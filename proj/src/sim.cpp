#include "spamstake/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace spamstake {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<LabeledUrl> take_slice(const std::vector<LabeledUrl>& pool,
                                   size_t& cursor, size_t count,
                                   const std::string& actor, int round) {
    if (cursor + count > pool.size())
        throw PoolExhaustedError("pool exhausted for actor " + actor + " in round " +
                                 std::to_string(round));
    std::vector<LabeledUrl> batch(pool.begin() + cursor, pool.begin() + cursor + count);
    cursor += count;
    return batch;
}

}  // namespace

Strategy strategy_from_name(const std::string& name) {
    if (name == "good") return Strategy::Good;
    if (name == "bad") return Strategy::Bad;
    if (name == "repeat_submitter") return Strategy::RepeatSubmitter;
    if (name == "colluder") return Strategy::Colluder;
    throw std::runtime_error("unknown strategy: " + name);
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Good: return "good";
        case Strategy::Bad: return "bad";
        case Strategy::RepeatSubmitter: return "repeat_submitter";
        case Strategy::Colluder: return "colluder";
    }
    return "unknown";
}

std::vector<LabeledUrl> strategy_draw(const ActorSpec& actor,
                                      const DatasetPartition& partition,
                                      DrawState& state, int round, SplitMix64& rng) {
    (void)rng;  // strategies are currently cursor-driven
    switch (actor.strategy) {
        case Strategy::Good: {
            auto batch = take_slice(partition.good_pool, state.good_cursor,
                                    static_cast<size_t>(actor.batch_size), actor.id, round);
            for (auto& p : batch) p.contributor_hint = actor.id;
            return batch;
        }
        case Strategy::Bad: {
            auto batch = take_slice(partition.bad_pool, state.bad_cursor,
                                    static_cast<size_t>(actor.batch_size), actor.id, round);
            for (auto& p : batch) p.contributor_hint = actor.id;
            return batch;
        }
        case Strategy::RepeatSubmitter: {
            auto it = state.repeat_point.find(actor.id);
            if (it == state.repeat_point.end()) {
                auto fresh = take_slice(partition.good_pool, state.good_cursor, 1,
                                        actor.id, round);
                it = state.repeat_point.emplace(actor.id, fresh.front()).first;
            }
            LabeledUrl point = it->second;
            point.contributor_hint = actor.id;
            return {point};
        }
        case Strategy::Colluder: {
            // One shared batch per round; every group member submits the
            // same domains under a member-specific url.
            if (state.colluder_round != round) {
                state.colluder_batch =
                    take_slice(partition.good_pool, state.good_cursor,
                               static_cast<size_t>(actor.batch_size), actor.id, round);
                state.colluder_round = round;
            }
            std::vector<LabeledUrl> batch = state.colluder_batch;
            for (auto& p : batch) {
                p.url += (p.url.find('?') == std::string::npos ? "?m=" : "&m=") + actor.id;
                p.contributor_hint = actor.id;
            }
            return batch;
        }
    }
    throw std::logic_error("unreachable strategy");
}

SimulationTrace run_simulation(const DatasetPartition& partition,
                               const std::vector<ActorSpec>& actors, int rounds,
                               const LedgerParams& ledger_params,
                               const TrainConfig& train_config, uint64_t seed,
                               const WhoisClient& whois) {
    if (rounds < 1) throw std::runtime_error("run_simulation: rounds must be >= 1");

    std::vector<ActorSpec> roster = actors;
    std::sort(roster.begin(), roster.end(),
              [](const ActorSpec& a, const ActorSpec& b) { return a.id < b.id; });

    Ledger ledger = Ledger::genesis(ledger_params.creator_deposit,
                                    ledger_params.stake_cap_fraction,
                                    ledger_params.inference_fee);
    for (const auto& actor : roster)
        ledger.fund_account(actor.id, actor.initial_balance);

    FeatureMatrix base_eval =
        FeatureMatrix::from_rows(extract_rows(partition.base_set, whois));
    FeatureMatrix production = base_eval;
    ModelSnapshot model = train(production, train_config);
    double accuracy = evaluate(model, base_eval);

    SimulationTrace trace;
    trace.rounds = rounds;
    trace.seed = seed;
    trace.initial_accuracy = accuracy;
    for (const auto& actor : roster) trace.actor_ids.push_back(actor.id);

    DrawState draw_state;
    std::map<std::string, SplitMix64> streams;
    for (const auto& actor : roster)
        streams.emplace(actor.id, derive_stream(seed, actor.id));
    std::map<std::string, bool> benched;

    auto actor_balances = [&] {
        std::map<std::string, Currency> out;
        for (const auto& actor : roster) out[actor.id] = ledger.balance(actor.id);
        return out;
    };

    for (int round = 1; round <= rounds; ++round) {
        for (const auto& actor : roster) {
            if (benched[actor.id]) continue;
            if (ledger.balance(actor.id) < actor.stake_per_round) {
                benched[actor.id] = true;
                ledger.log_event("op=bench actor=" + actor.id +
                                 " round=" + std::to_string(round));
                continue;
            }

            std::vector<LabeledUrl> batch = strategy_draw(
                actor, partition, draw_state, round, streams.at(actor.id));

            ledger.place_stake(actor.id, actor.stake_per_round);
            DuplicateStats dup = check_duplicates(batch, ledger.history());
            WeightReport report =
                calculate_weight(batch, model, production, ledger.history(),
                                 train_config, whois, &base_eval);
            Settlement settlement =
                ledger.settle(actor.id, report, dup.max_domain_count, batch);

            if (report.verdict == Verdict::Accepted) {
                production = merge_accepted(production, batch, whois);
                model = train(production, train_config);
                accuracy = report.accuracy_new;
            }

            RoundRecord record;
            record.round = round;
            record.actor = actor.id;
            record.verdict = report.verdict;
            record.final_weight = report.final_weight;
            record.reward_paid = settlement.reward_paid;
            record.balances = actor_balances();
            record.contract_balance = ledger.contract_balance();
            record.accuracy = accuracy;
            trace.per_round.push_back(std::move(record));

            if (!ledger.conservation_holds())
                throw std::logic_error("ledger conservation violated in round " +
                                       std::to_string(round));
        }
        trace.round_balances.push_back(actor_balances());
        trace.round_contract.push_back(ledger.contract_balance());
        trace.round_accuracy.push_back(accuracy);
    }

    trace.events = ledger.events();
    return trace;
}

void emit_trace(const SimulationTrace& trace, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream out(fs::path(out_dir) / "balances.csv");
        if (!out) throw std::runtime_error("cannot write balances.csv in " + out_dir);
        out << "round,actor,balance\n";
        for (int r = 1; r <= trace.rounds; ++r)
            for (const auto& id : trace.actor_ids)
                out << r << ',' << id << ','
                    << trace.round_balances[static_cast<size_t>(r - 1)].at(id) << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "accuracy.csv");
        if (!out) throw std::runtime_error("cannot write accuracy.csv in " + out_dir);
        out << "round,accuracy\n";
        for (int r = 1; r <= trace.rounds; ++r)
            out << r << ',' << fmt_double(trace.round_accuracy[static_cast<size_t>(r - 1)])
                << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "contract.csv");
        if (!out) throw std::runtime_error("cannot write contract.csv in " + out_dir);
        out << "round,contract_balance\n";
        for (int r = 1; r <= trace.rounds; ++r)
            out << r << ',' << trace.round_contract[static_cast<size_t>(r - 1)] << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "events.log");
        if (!out) throw std::runtime_error("cannot write events.log in " + out_dir);
        for (const auto& line : trace.events) out << line << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "config.echo");
        if (!out) throw std::runtime_error("cannot write config.echo in " + out_dir);
        out << trace.config_echo;
    }
}

}  // namespace spamstake
