#include "spamstake/whois.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace spamstake {

FixtureWhoisClient FixtureWhoisClient::from_csv(const std::string& path,
                                                int64_t default_days) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open whois fixture: " + path);

    FixtureWhoisClient client(default_days);
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line))
        throw std::runtime_error("empty whois fixture: " + path);
    ++lineno;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        size_t comma = line.rfind(',');
        if (comma == std::string::npos)
            throw std::runtime_error("whois fixture line " + std::to_string(lineno) +
                                     ": missing duration column");
        std::string domain = line.substr(0, comma);
        int64_t days = std::stoll(line.substr(comma + 1));
        if (days < 0)
            throw std::runtime_error("whois fixture line " + std::to_string(lineno) +
                                     ": negative duration");
        client.set(domain, days);
    }
    return client;
}

}  // namespace spamstake
