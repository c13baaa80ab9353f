#ifndef SPAMSTAKE_LEDGER_HPP
#define SPAMSTAKE_LEDGER_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spamstake/oracle.hpp"

namespace spamstake {

// Smallest-denomination integer units; conservation must be exact.
using Currency = int64_t;

class LedgerError : public std::runtime_error {
public:
    enum class Kind {
        InvalidParameter,
        InsufficientBalance,
        StakeAlreadyOpen,
        CapExceeded,
        NoOpenStake,
    };
    LedgerError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct Settlement {
    std::string contributor;
    Currency stake = 0;
    double final_weight = 0.0;
    int duplicate_divisor = 1;
    Currency reward_paid = 0;
    bool stake_returned = false;
};

// The contract state machine: stakes, balances, reward settlement,
// slashing, the staking cap, and inference fees. A single serialized
// state; every mutation is atomic (a thrown error leaves the state
// untouched) and appends one line to the event log.
class Ledger {
public:
    static Ledger genesis(Currency creator_deposit, double stake_cap_fraction,
                          Currency inference_fee);

    void fund_account(const std::string& contributor, Currency amount);
    void place_stake(const std::string& contributor, Currency amount);

    // Pays Eq-1 reward on acceptance, slashes the stake into the contract
    // on any rejection. Records the submission into history either way;
    // accepted urls are additionally marked as merged.
    Settlement settle(const std::string& contributor, const WeightReport& report,
                      int max_domain_count, const std::vector<LabeledUrl>& data);

    void pay_inference_fee(const std::string& user);

    // Reward surplus beyond the returned stake, rounded half-up.
    static Currency reward_surplus(double final_weight, int duplicate_divisor,
                                   Currency stake);

    Currency contract_balance() const { return contract_balance_; }
    Currency total_minted() const { return total_minted_; }
    Currency balance(const std::string& contributor) const;
    Currency open_stake(const std::string& contributor) const;
    const std::map<std::string, Currency>& balances() const { return balances_; }
    const std::map<std::string, Currency>& active_stakes() const { return stakes_; }
    const SubmissionHistory& history() const { return history_; }
    double stake_cap_fraction() const { return stake_cap_fraction_; }
    Currency inference_fee() const { return inference_fee_; }
    const std::vector<std::string>& events() const { return events_; }

    // External audit events (e.g. the simulation benching an actor).
    void log_event(const std::string& text);

    bool conservation_holds() const;

private:
    Ledger() = default;

    Currency contract_balance_ = 0;
    Currency total_minted_ = 0;
    std::map<std::string, Currency> balances_;
    std::map<std::string, Currency> stakes_;
    SubmissionHistory history_;
    double stake_cap_fraction_ = 1.0;
    Currency inference_fee_ = 0;
    std::vector<std::string> events_;
    uint64_t seq_ = 0;
};

// Adds urls to the contributor's set and bumps each normalized domain's
// global counter. Acceptance marking happens inside Ledger::settle.
void record_submission(SubmissionHistory& history, const std::string& contributor,
                       const std::vector<LabeledUrl>& data);

}  // namespace spamstake

#endif
