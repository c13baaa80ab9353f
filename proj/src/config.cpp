#include "spamstake/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spamstake {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json actor_to_json(const ActorSpec& a) {
    return ordered_json{{"id", a.id},
                        {"strategy", strategy_name(a.strategy)},
                        {"initial_balance", a.initial_balance},
                        {"stake_per_round", a.stake_per_round},
                        {"batch_size", a.batch_size}};
}

ActorSpec actor_from_json(const ordered_json& j) {
    ActorSpec a;
    a.id = j.at("id").get<std::string>();
    a.strategy = strategy_from_name(j.at("strategy").get<std::string>());
    a.initial_balance = j.at("initial_balance").get<Currency>();
    a.stake_per_round = j.at("stake_per_round").get<Currency>();
    a.batch_size = j.value("batch_size", 10);
    if (a.batch_size < 1) throw ConfigError("actor " + a.id + ": batch_size must be >= 1");
    if (a.stake_per_round > a.initial_balance)
        throw ConfigError("actor " + a.id + ": stake_per_round exceeds initial_balance");
    return a;
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["dataset"] = c.dataset_path;
    j["whois_fixture"] = c.whois_fixture_path;
    j["whois_default_days"] = c.whois_default_days;
    j["partition"] = {{"base_fraction", c.base_fraction},
                      {"good_fraction", c.good_fraction}};
    j["seed"] = c.seed;
    j["rounds"] = c.rounds;
    ordered_json actors = ordered_json::array();
    for (const auto& a : c.actors) actors.push_back(actor_to_json(a));
    j["actors"] = actors;
    j["ledger"] = {{"creator_deposit", c.ledger.creator_deposit},
                   {"stake_cap_fraction", c.ledger.stake_cap_fraction},
                   {"inference_fee", c.ledger.inference_fee}};
    j["train"] = {{"learning_rate", c.train.learning_rate},
                  {"iterations", c.train.iterations},
                  {"l2", c.train.l2}};
    j["out_dir"] = c.out_dir;
    return j;
}

RunConfig from_json(const ordered_json& j) {
    RunConfig c = default_config();
    if (j.contains("dataset")) c.dataset_path = j["dataset"].get<std::string>();
    if (j.contains("whois_fixture"))
        c.whois_fixture_path = j["whois_fixture"].get<std::string>();
    if (j.contains("whois_default_days"))
        c.whois_default_days = j["whois_default_days"].get<int64_t>();
    if (j.contains("partition")) {
        const auto& p = j["partition"];
        if (p.contains("base_fraction")) c.base_fraction = p["base_fraction"].get<double>();
        if (p.contains("good_fraction")) c.good_fraction = p["good_fraction"].get<double>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("rounds")) c.rounds = j["rounds"].get<int>();
    if (j.contains("actors")) {
        c.actors.clear();
        for (const auto& a : j["actors"]) c.actors.push_back(actor_from_json(a));
    }
    if (j.contains("ledger")) {
        const auto& l = j["ledger"];
        if (l.contains("creator_deposit"))
            c.ledger.creator_deposit = l["creator_deposit"].get<Currency>();
        if (l.contains("stake_cap_fraction"))
            c.ledger.stake_cap_fraction = l["stake_cap_fraction"].get<double>();
        if (l.contains("inference_fee"))
            c.ledger.inference_fee = l["inference_fee"].get<Currency>();
    }
    if (j.contains("train")) {
        const auto& t = j["train"];
        if (t.contains("learning_rate")) c.train.learning_rate = t["learning_rate"].get<double>();
        if (t.contains("iterations")) c.train.iterations = t["iterations"].get<int>();
        if (t.contains("l2")) c.train.l2 = t["l2"].get<double>();
    }
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (c.rounds < 1) throw ConfigError("rounds must be >= 1");
    return c;
}

}  // namespace

RunConfig default_config() {
    RunConfig c;
    c.actors = {
        {"good1", Strategy::Good, 5000, 1000, 10},
        {"good2", Strategy::Good, 5000, 1000, 10},
        {"bad1", Strategy::Bad, 5000, 1000, 10},
    };
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_text(buf.str());
}

std::string config_to_text(const RunConfig& config) {
    return to_json(config).dump(2) + "\n";
}

RunConfig config_from_text(const std::string& text) {
    try {
        return from_json(ordered_json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

}  // namespace spamstake
