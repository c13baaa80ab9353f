#ifndef SPAMSTAKE_WHOIS_HPP
#define SPAMSTAKE_WHOIS_HPP

#include <cstdint>
#include <map>
#include <string>

namespace spamstake {

// Read-only lookup of a domain's active duration (days since registration).
// Implementations must be safe to share across threads for lookups.
class WhoisClient {
public:
    virtual ~WhoisClient() = default;
    // `domain` is a normalized host string. Unknown domains are not an
    // error; clients return their documented default.
    virtual int64_t active_duration_days(const std::string& domain) const = 0;
};

// Always returns 0. Stand-in when no registration data is available.
class NullWhoisClient final : public WhoisClient {
public:
    int64_t active_duration_days(const std::string&) const override { return 0; }
};

// Offline lookup table loaded from a CSV file (header
// `domain,active_duration_days`). Unknown domains return `default_days`.
class FixtureWhoisClient final : public WhoisClient {
public:
    explicit FixtureWhoisClient(int64_t default_days = 0)
        : default_days_(default_days) {}

    static FixtureWhoisClient from_csv(const std::string& path,
                                       int64_t default_days = 0);

    void set(const std::string& domain, int64_t days) { table_[domain] = days; }

    int64_t active_duration_days(const std::string& domain) const override {
        auto it = table_.find(domain);
        return it == table_.end() ? default_days_ : it->second;
    }

    size_t size() const { return table_.size(); }

private:
    std::map<std::string, int64_t> table_;
    int64_t default_days_;
};

}  // namespace spamstake

#endif
