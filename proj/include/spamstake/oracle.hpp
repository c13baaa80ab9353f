#ifndef SPAMSTAKE_ORACLE_HPP
#define SPAMSTAKE_ORACLE_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spamstake/model.hpp"

namespace spamstake {

struct EmptySubmissionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroBaseAccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Record of who submitted which data points, plus system-wide domain
// counts. Mutated only at settlement time, never during evaluation.
struct SubmissionHistory {
    std::map<std::string, std::set<std::string>> per_contributor;
    std::map<std::string, int> global_domain_counts;
    std::set<std::string> accepted_urls;

    bool url_seen(const std::string& url) const;
};

enum class Verdict { Accepted, RejectedNegativeWeight, RejectedDuplicate };

const char* verdict_name(Verdict v);

struct WeightReport {
    double accuracy_base = 0.0;
    double accuracy_new = 0.0;
    double base_weight = 0.0;
    double penalty_factor = 1.0;
    int duplicate_divisor = 1;
    double final_weight = 0.0;
    Verdict verdict = Verdict::RejectedNegativeWeight;

    // One structured trace line, stable field names.
    std::string serialize() const;
};

struct DuplicateStats {
    int repeat_count = 0;     // data points whose url is already in any history set
    bool pure_duplicate = false;  // every point already accepted
    int max_domain_count = 0;     // highest global count among submitted domains
};

DuplicateStats check_duplicates(const std::vector<LabeledUrl>& new_data,
                                const SubmissionHistory& history);

// Evaluate the base model, retrain on base+new, evaluate the retrained
// model, and derive the penalized contribution weight. When `eval_data` is
// null, accuracy is measured on `base_data` itself; the simulation passes
// the fixed reference base set so the grading corpus never grows. History
// is not mutated here.
WeightReport calculate_weight(const std::vector<LabeledUrl>& new_data,
                              const ModelSnapshot& base_model,
                              const FeatureMatrix& base_data,
                              const SubmissionHistory& history,
                              const TrainConfig& config,
                              const WhoisClient& whois,
                              const FeatureMatrix* eval_data = nullptr);

// Production dataset after an accepted submission.
FeatureMatrix merge_accepted(const FeatureMatrix& base_data,
                             const std::vector<LabeledUrl>& new_data,
                             const WhoisClient& whois);

std::vector<std::pair<FeatureVector, int>> extract_rows(
    const std::vector<LabeledUrl>& data, const WhoisClient& whois);

}  // namespace spamstake

#endif
