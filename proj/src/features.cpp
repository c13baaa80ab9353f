#include "spamstake/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spamstake/rng.hpp"

namespace spamstake {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string normalize_host(const std::string& raw_url) {
    std::string url = trim(raw_url);
    if (url.empty()) throw MalformedUrlError("empty url");

    size_t start = 0;
    size_t scheme = url.find("://");
    if (scheme != std::string::npos) start = scheme + 3;

    size_t end = url.find_first_of("/?#:", start);
    if (end == std::string::npos) end = url.size();

    std::string host = url.substr(start, end - start);
    std::transform(host.begin(), host.end(), host.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty())
        throw MalformedUrlError("no host component in url: " + raw_url);
    return host;
}

FeatureVector extract_features(const std::string& url, const WhoisClient& whois) {
    const std::string host = normalize_host(url);

    FeatureVector fv;
    fv.domain_length = static_cast<int64_t>(host.size());
    fv.has_dash = host.find('-') != std::string::npos ? 1 : 0;

    // Path portion: everything after the host. A "//" there hints at an
    // embedded redirect target.
    const std::string trimmed = trim(url);
    size_t scheme = trimmed.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    size_t path_start = trimmed.find_first_of("/?#", host_start);
    std::string path = path_start == std::string::npos ? "" : trimmed.substr(path_start);
    fv.is_redirect = path.find("//") != std::string::npos ? 1 : 0;

    int64_t labels = host.empty() ? 0 : 1 + static_cast<int64_t>(std::count(host.begin(), host.end(), '.'));
    fv.num_subdomains = std::max<int64_t>(0, labels - 2);

    fv.active_duration_days = std::max<int64_t>(0, whois.active_duration_days(host));
    return fv;
}

std::vector<LabeledUrl> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DatasetFormatError("cannot open dataset file: " + path);

    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) throw DatasetFormatError("empty file (missing header): " + path);
    ++lineno;
    if (trim(line) != "url,label")
        throw DatasetFormatError("line 1: expected header \"url,label\", got \"" + trim(line) + "\"");

    std::vector<LabeledUrl> rows;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t comma = t.rfind(',');
        if (comma == std::string::npos)
            throw DatasetFormatError("line " + std::to_string(lineno) + ": missing label column");
        std::string url = trim(t.substr(0, comma));
        std::string label = trim(t.substr(comma + 1));
        if (url.empty())
            throw DatasetFormatError("line " + std::to_string(lineno) + ": empty url");
        if (label != "0" && label != "1")
            throw DatasetFormatError("line " + std::to_string(lineno) + ": label must be 0 or 1, got \"" + label + "\"");
        rows.push_back({url, label == "1" ? 1 : 0, std::nullopt});
    }
    return rows;
}

DatasetPartition partition_dataset(const std::vector<LabeledUrl>& data,
                                   double base_fraction, double good_fraction,
                                   uint64_t seed) {
    if (!(base_fraction > 0.0) || !(good_fraction > 0.0) ||
        !(base_fraction + good_fraction < 1.0))
        throw InvalidFractionError("fractions must be positive with base+good < 1");
    if (data.empty()) throw InvalidFractionError("cannot partition an empty dataset");

    std::vector<LabeledUrl> shuffled = data;
    SplitMix64 rng(seed);
    deterministic_shuffle(shuffled, rng);

    const size_t n = shuffled.size();
    size_t n_base = static_cast<size_t>(std::llround(static_cast<double>(n) * base_fraction));
    size_t n_good = static_cast<size_t>(std::llround(static_cast<double>(n) * good_fraction));
    n_base = std::min(n_base, n);
    n_good = std::min(n_good, n - n_base);

    DatasetPartition part;
    part.base_set.assign(shuffled.begin(), shuffled.begin() + n_base);
    part.good_pool.assign(shuffled.begin() + n_base, shuffled.begin() + n_base + n_good);
    part.bad_pool.assign(shuffled.begin() + n_base + n_good, shuffled.end());
    for (auto& row : part.bad_pool) row.label = 1 - row.label;
    return part;
}

}  // namespace spamstake
