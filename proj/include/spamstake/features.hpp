#ifndef SPAMSTAKE_FEATURES_HPP
#define SPAMSTAKE_FEATURES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spamstake/whois.hpp"

namespace spamstake {

struct MalformedUrlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DatasetFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidFractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One contributed data point: a URL plus its binary label (spam=1, ham=0).
struct LabeledUrl {
    std::string url;
    int label = 0;
    std::optional<std::string> contributor_hint;
};

// The five numeric features fed to the classifier.
struct FeatureVector {
    int64_t domain_length = 0;
    int has_dash = 0;
    int is_redirect = 0;
    int64_t num_subdomains = 0;
    int64_t active_duration_days = 0;

    static constexpr size_t kCount = 5;

    std::array<double, kCount> as_array() const {
        return {static_cast<double>(domain_length),
                static_cast<double>(has_dash),
                static_cast<double>(is_redirect),
                static_cast<double>(num_subdomains),
                static_cast<double>(active_duration_days)};
    }
};

struct DatasetPartition {
    std::vector<LabeledUrl> base_set;
    std::vector<LabeledUrl> good_pool;
    // Labels in bad_pool are the complement of the source labels.
    std::vector<LabeledUrl> bad_pool;
};

// Host component of `url`: the substring after "://" (if any) up to the
// first of '/', '?', '#', ':'; lowercased, single trailing dot stripped.
// Throws MalformedUrlError when no host can be isolated.
std::string normalize_host(const std::string& url);

// Registrable-domain heuristic used for submission-history counting: the
// host itself (subdomain labels are part of the host, so the full
// normalized host identifies the submitted domain).
FeatureVector extract_features(const std::string& url, const WhoisClient& whois);

// CSV with header `url,label`; label must be "0" or "1". Errors cite the
// offending 1-based line number.
std::vector<LabeledUrl> load_dataset(const std::string& path);

// Seeded shuffle, then split: first base_fraction to base_set, next
// good_fraction to good_pool, remainder to bad_pool with labels flipped.
DatasetPartition partition_dataset(const std::vector<LabeledUrl>& data,
                                   double base_fraction, double good_fraction,
                                   uint64_t seed);

}  // namespace spamstake

#endif
