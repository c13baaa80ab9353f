#include "spamstake/ledger.hpp"

#include <cmath>
#include <sstream>

namespace spamstake {

namespace {

std::string kv(const std::string& key, Currency v) {
    return " " + key + "=" + std::to_string(v);
}

}  // namespace

Ledger Ledger::genesis(Currency creator_deposit, double stake_cap_fraction,
                       Currency inference_fee) {
    if (creator_deposit <= 0)
        throw LedgerError(LedgerError::Kind::InvalidParameter,
                          "genesis: creator deposit must be positive");
    if (!(stake_cap_fraction > 0.0) || stake_cap_fraction > 1.0)
        throw LedgerError(LedgerError::Kind::InvalidParameter,
                          "genesis: stake cap fraction must be in (0, 1]");
    if (inference_fee < 0)
        throw LedgerError(LedgerError::Kind::InvalidParameter,
                          "genesis: inference fee must be non-negative");

    Ledger ledger;
    ledger.contract_balance_ = creator_deposit;
    ledger.total_minted_ = creator_deposit;
    ledger.stake_cap_fraction_ = stake_cap_fraction;
    ledger.inference_fee_ = inference_fee;
    ledger.log_event("op=genesis" + kv("deposit", creator_deposit) +
                     kv("fee", inference_fee));
    return ledger;
}

Currency Ledger::balance(const std::string& contributor) const {
    auto it = balances_.find(contributor);
    return it == balances_.end() ? 0 : it->second;
}

Currency Ledger::open_stake(const std::string& contributor) const {
    auto it = stakes_.find(contributor);
    return it == stakes_.end() ? 0 : it->second;
}

void Ledger::fund_account(const std::string& contributor, Currency amount) {
    if (amount <= 0)
        throw LedgerError(LedgerError::Kind::InvalidParameter,
                          "fund_account: amount must be positive");
    balances_[contributor] += amount;
    total_minted_ += amount;
    log_event("op=fund contributor=" + contributor + kv("amount", amount) +
              kv("balance", balances_[contributor]));
}

void Ledger::place_stake(const std::string& contributor, Currency amount) {
    if (amount <= 0)
        throw LedgerError(LedgerError::Kind::InvalidParameter,
                          "place_stake: amount must be positive");
    if (stakes_.count(contributor))
        throw LedgerError(LedgerError::Kind::StakeAlreadyOpen,
                          "place_stake: " + contributor + " already has an open stake");
    if (balance(contributor) < amount)
        throw LedgerError(LedgerError::Kind::InsufficientBalance,
                          "place_stake: " + contributor + " has insufficient balance");
    // Anti-monopolization rule: the stake may not exceed the configured
    // fraction of the contract's current value.
    Currency cap = static_cast<Currency>(
        std::floor(stake_cap_fraction_ * static_cast<double>(contract_balance_)));
    if (amount > cap)
        throw LedgerError(LedgerError::Kind::CapExceeded,
                          "place_stake: " + std::to_string(amount) +
                              " exceeds cap " + std::to_string(cap));

    balances_[contributor] -= amount;
    stakes_[contributor] = amount;
    log_event("op=stake contributor=" + contributor + kv("amount", amount) +
              kv("balance", balances_[contributor]));
}

Currency Ledger::reward_surplus(double final_weight, int duplicate_divisor,
                                Currency stake) {
    double surplus = final_weight / static_cast<double>(duplicate_divisor) *
                     static_cast<double>(stake);
    return static_cast<Currency>(std::floor(surplus + 0.5));
}

Settlement Ledger::settle(const std::string& contributor, const WeightReport& report,
                          int max_domain_count, const std::vector<LabeledUrl>& data) {
    auto it = stakes_.find(contributor);
    if (it == stakes_.end())
        throw LedgerError(LedgerError::Kind::NoOpenStake,
                          "settle: no open stake for " + contributor);
    const Currency stake = it->second;

    Settlement settlement;
    settlement.contributor = contributor;
    settlement.stake = stake;
    settlement.final_weight = report.final_weight;
    settlement.duplicate_divisor = std::max(1, max_domain_count);

    if (report.verdict == Verdict::Accepted) {
        Currency surplus = reward_surplus(report.final_weight,
                                          settlement.duplicate_divisor, stake);
        // The contract assumes solvency; if it cannot cover the surplus the
        // payout is clamped and flagged so conservation stays exact.
        bool clamped = surplus > contract_balance_;
        if (clamped) surplus = contract_balance_;
        stakes_.erase(it);
        contract_balance_ -= surplus;
        balances_[contributor] += stake + surplus;
        settlement.reward_paid = stake + surplus;
        settlement.stake_returned = true;
        record_submission(history_, contributor, data);
        for (const auto& point : data) history_.accepted_urls.insert(point.url);
        log_event("op=settle contributor=" + contributor + " verdict=accepted" +
                  kv("stake", stake) + kv("surplus", surplus) +
                  kv("divisor", settlement.duplicate_divisor) +
                  kv("balance", balances_[contributor]) +
                  kv("contract", contract_balance_) +
                  (clamped ? " warn=insolvency-clamped" : ""));
    } else {
        // Slashed: the forfeited stake funds the incentive pool.
        stakes_.erase(it);
        contract_balance_ += stake;
        settlement.reward_paid = 0;
        settlement.stake_returned = false;
        record_submission(history_, contributor, data);
        log_event("op=settle contributor=" + contributor + " verdict=" +
                  verdict_name(report.verdict) + kv("slashed", stake) +
                  kv("balance", balances_[contributor]) +
                  kv("contract", contract_balance_));
    }
    return settlement;
}

void Ledger::pay_inference_fee(const std::string& user) {
    if (balance(user) < inference_fee_)
        throw LedgerError(LedgerError::Kind::InsufficientBalance,
                          "pay_inference_fee: " + user + " has insufficient balance");
    balances_[user] -= inference_fee_;
    contract_balance_ += inference_fee_;
    log_event("op=fee user=" + user + kv("amount", inference_fee_) +
              kv("balance", balances_[user]) + kv("contract", contract_balance_));
}

void Ledger::log_event(const std::string& text) {
    events_.push_back("seq=" + std::to_string(seq_++) + " " + text);
}

bool Ledger::conservation_holds() const {
    Currency total = contract_balance_;
    for (const auto& [id, v] : balances_) {
        (void)id;
        total += v;
    }
    for (const auto& [id, v] : stakes_) {
        (void)id;
        total += v;
    }
    return total == total_minted_;
}

void record_submission(SubmissionHistory& history, const std::string& contributor,
                       const std::vector<LabeledUrl>& data) {
    for (const auto& point : data) {
        history.per_contributor[contributor].insert(point.url);
        history.global_domain_counts[normalize_host(point.url)] += 1;
    }
}

}  // namespace spamstake
