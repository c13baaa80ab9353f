#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spamstake/sim.hpp"

using namespace spamstake;

namespace {

// Synthetic partition: spam short-lived, ham long-lived; the bad pool
// carries flipped labels like a real adversarial sector would.
struct SimFixture {
    FixtureWhoisClient whois{0};
    DatasetPartition partition;

    SimFixture(size_t base_n, size_t good_n, size_t bad_n) {
        SplitMix64 rng(555);
        auto make = [&](const std::string& prefix, size_t i, bool flip) {
            int label = static_cast<int>(rng.bounded(2));
            std::string domain = prefix + std::to_string(i) + ".test";
            int64_t days = label ? static_cast<int64_t>(rng.bounded(900))
                                 : 2500 + static_cast<int64_t>(rng.bounded(4000));
            whois.set(domain, days);
            return LabeledUrl{"http://" + domain + "/", flip ? 1 - label : label,
                              std::nullopt};
        };
        for (size_t i = 0; i < base_n; ++i)
            partition.base_set.push_back(make("base", i, false));
        for (size_t i = 0; i < good_n; ++i)
            partition.good_pool.push_back(make("good", i, false));
        for (size_t i = 0; i < bad_n; ++i)
            partition.bad_pool.push_back(make("bad", i, true));
    }
};

TrainConfig fast_train() {
    TrainConfig cfg;
    cfg.iterations = 120;
    return cfg;
}

ActorSpec actor(const std::string& id, Strategy s, Currency initial, Currency stake,
                int batch) {
    ActorSpec a;
    a.id = id;
    a.strategy = s;
    a.initial_balance = initial;
    a.stake_per_round = stake;
    a.batch_size = batch;
    return a;
}

size_t count_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("strategy names round-trip") {
    for (auto s : {Strategy::Good, Strategy::Bad, Strategy::RepeatSubmitter,
                   Strategy::Colluder})
        CHECK(strategy_from_name(strategy_name(s)) == s);
    CHECK_THROWS(strategy_from_name("sideways"));
}

TEST_CASE("strategy_draw: cursors, repeat reuse, colluder sharing") {
    SimFixture fx(10, 20, 10);
    DrawState state;
    SplitMix64 rng(1);

    auto good = actor("g", Strategy::Good, 0, 0, 3);
    auto b1 = strategy_draw(good, fx.partition, state, 1, rng);
    auto b2 = strategy_draw(good, fx.partition, state, 2, rng);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0].url == fx.partition.good_pool[0].url);
    CHECK(b2[0].url == fx.partition.good_pool[3].url);  // shared cursor advances
    CHECK(b1[0].contributor_hint == std::string("g"));

    auto bad = actor("x", Strategy::Bad, 0, 0, 2);
    auto bb = strategy_draw(bad, fx.partition, state, 1, rng);
    CHECK(bb[0].url == fx.partition.bad_pool[0].url);
    CHECK(bb[0].label == fx.partition.bad_pool[0].label);

    auto rep = actor("r", Strategy::RepeatSubmitter, 0, 0, 1);
    auto r1 = strategy_draw(rep, fx.partition, state, 1, rng);
    auto r2 = strategy_draw(rep, fx.partition, state, 5, rng);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].url == r2[0].url);  // same point every round
    CHECK(r1[0].url == fx.partition.good_pool[6].url);  // drawn after g's 6

    auto c1 = actor("c1", Strategy::Colluder, 0, 0, 2);
    auto c2 = actor("c2", Strategy::Colluder, 0, 0, 2);
    auto d1 = strategy_draw(c1, fx.partition, state, 3, rng);
    auto d2 = strategy_draw(c2, fx.partition, state, 3, rng);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].url != d2[0].url);  // member-specific urls...
    CHECK(normalize_host(d1[0].url) == normalize_host(d2[0].url));  // ...same domain
    CHECK(d1[0].label == d2[0].label);
    // next round draws a fresh shared batch
    auto d3 = strategy_draw(c1, fx.partition, state, 4, rng);
    CHECK(normalize_host(d3[0].url) != normalize_host(d1[0].url));

    DrawState tiny;
    auto big = actor("g", Strategy::Good, 0, 0, 99);
    CHECK_THROWS_AS(strategy_draw(big, fx.partition, tiny, 1, rng),
                    PoolExhaustedError);
}

TEST_CASE("run_simulation: trace shape and conservation") {
    SimFixture fx(40, 60, 40);
    std::vector<ActorSpec> roster = {
        actor("alice", Strategy::Good, 5000, 500, 4),
        actor("mallory", Strategy::Bad, 5000, 500, 4),
    };
    LedgerParams params;
    auto trace =
        run_simulation(fx.partition, roster, 6, params, fast_train(), 42, fx.whois);

    CHECK(trace.rounds == 6);
    REQUIRE(trace.round_balances.size() == 6);
    REQUIRE(trace.round_accuracy.size() == 6);
    REQUIRE(trace.round_contract.size() == 6);
    CHECK(trace.per_round.size() == 12);  // both solvent the whole run
    CHECK(trace.actor_ids == std::vector<std::string>{"alice", "mallory"});
    for (const auto& snapshot : trace.round_balances) {
        REQUIRE(snapshot.size() == 2);
        CHECK(snapshot.count("alice") == 1);
        CHECK(snapshot.count("mallory") == 1);
    }
    CHECK(trace.initial_accuracy > 0.5);
    for (double acc : trace.round_accuracy) {
        CHECK(acc >= trace.initial_accuracy);
        CHECK(acc <= 1.0);
    }
    // money never leaves the closed system
    Currency minted = params.creator_deposit + 5000 + 5000;
    for (size_t r = 0; r < 6; ++r) {
        Currency total = trace.round_contract[r];
        for (const auto& [id, bal] : trace.round_balances[r]) total += bal;
        CHECK(total == minted);
    }
}

TEST_CASE("run_simulation: deterministic for fixed seed") {
    SimFixture fx(30, 40, 30);
    std::vector<ActorSpec> roster = {
        actor("a", Strategy::Good, 4000, 400, 3),
        actor("b", Strategy::Bad, 4000, 400, 3),
        actor("r", Strategy::RepeatSubmitter, 4000, 400, 1),
    };
    auto t1 = run_simulation(fx.partition, roster, 5, LedgerParams{}, fast_train(),
                             7, fx.whois);
    auto t2 = run_simulation(fx.partition, roster, 5, LedgerParams{}, fast_train(),
                             7, fx.whois);
    REQUIRE(t1.per_round.size() == t2.per_round.size());
    for (size_t i = 0; i < t1.per_round.size(); ++i) {
        CHECK(t1.per_round[i].actor == t2.per_round[i].actor);
        CHECK(t1.per_round[i].verdict == t2.per_round[i].verdict);
        CHECK(t1.per_round[i].final_weight == t2.per_round[i].final_weight);
        CHECK(t1.per_round[i].reward_paid == t2.per_round[i].reward_paid);
    }
    CHECK(t1.round_accuracy == t2.round_accuracy);
    CHECK(t1.round_balances == t2.round_balances);
    CHECK(t1.events == t2.events);
}

TEST_CASE("run_simulation: insolvent actor is benched once with an event") {
    SimFixture fx(30, 40, 30);
    std::vector<ActorSpec> roster = {
        actor("alice", Strategy::Good, 4000, 400, 3),
        actor("poor", Strategy::Bad, 100, 400, 3),  // can never afford the stake
    };
    auto trace = run_simulation(fx.partition, roster, 4, LedgerParams{},
                                fast_train(), 11, fx.whois);
    // only alice submits; poor is still present in every snapshot
    for (const auto& rec : trace.per_round) CHECK(rec.actor == "alice");
    CHECK(trace.per_round.size() == 4);
    for (const auto& snapshot : trace.round_balances)
        CHECK(snapshot.at("poor") == 100);
    size_t bench_events = 0;
    for (const auto& e : trace.events)
        if (e.find("op=bench actor=poor") != std::string::npos) ++bench_events;
    CHECK(bench_events == 1);
}

TEST_CASE("run_simulation: empty roster still produces snapshots") {
    SimFixture fx(30, 5, 5);
    auto trace = run_simulation(fx.partition, {}, 3, LedgerParams{}, fast_train(),
                                1, fx.whois);
    CHECK(trace.per_round.empty());
    REQUIRE(trace.round_accuracy.size() == 3);
    for (double acc : trace.round_accuracy) CHECK(acc == trace.initial_accuracy);
}

TEST_CASE("run_simulation: exhausted pool surfaces as an error") {
    SimFixture fx(30, 5, 5);
    std::vector<ActorSpec> roster = {actor("g", Strategy::Good, 9000, 100, 3)};
    CHECK_THROWS_AS(run_simulation(fx.partition, roster, 3, LedgerParams{},
                                   fast_train(), 1, fx.whois),
                    PoolExhaustedError);
}

TEST_CASE("emit_trace: file shapes and byte-identical re-emission") {
    namespace fs = std::filesystem;
    SimFixture fx(30, 40, 30);
    std::vector<ActorSpec> roster = {
        actor("a", Strategy::Good, 4000, 400, 3),
        actor("b", Strategy::Bad, 4000, 400, 3),
    };
    auto trace = run_simulation(fx.partition, roster, 5, LedgerParams{},
                                fast_train(), 3, fx.whois);
    trace.config_echo = "test-echo\n";

    auto dir1 = fs::temp_directory_path() / "spamstake_trace1";
    auto dir2 = fs::temp_directory_path() / "spamstake_trace2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    emit_trace(trace, dir1.string());
    emit_trace(trace, dir2.string());

    CHECK(count_lines(dir1 / "balances.csv") == 1 + 5 * 2);  // header + rounds*actors
    CHECK(count_lines(dir1 / "accuracy.csv") == 1 + 5);
    CHECK(count_lines(dir1 / "contract.csv") == 1 + 5);
    CHECK(fs::exists(dir1 / "events.log"));

    for (const char* name :
         {"balances.csv", "accuracy.csv", "contract.csv", "events.log", "config.echo"}) {
        std::ifstream f1(dir1 / name), f2(dir2 / name);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        CHECK(s1.str() == s2.str());
    }
    std::ifstream echo(dir1 / "config.echo");
    std::stringstream echo_text;
    echo_text << echo.rdbuf();
    CHECK(echo_text.str() == "test-echo\n");
}
