#include "spamstake/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spamstake {

bool SubmissionHistory::url_seen(const std::string& url) const {
    if (accepted_urls.count(url)) return true;
    for (const auto& [contributor, urls] : per_contributor) {
        (void)contributor;
        if (urls.count(url)) return true;
    }
    return false;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "accepted";
        case Verdict::RejectedNegativeWeight: return "rejected-negative-weight";
        case Verdict::RejectedDuplicate: return "rejected-duplicate";
    }
    return "unknown";
}

std::string WeightReport::serialize() const {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "accuracy_base=%.17g accuracy_new=%.17g base_weight=%.17g "
                  "penalty_factor=%.17g duplicate_divisor=%d final_weight=%.17g "
                  "verdict=%s",
                  accuracy_base, accuracy_new, base_weight, penalty_factor,
                  duplicate_divisor, final_weight, verdict_name(verdict));
    return buf;
}

DuplicateStats check_duplicates(const std::vector<LabeledUrl>& new_data,
                                const SubmissionHistory& history) {
    DuplicateStats stats;
    stats.pure_duplicate = !new_data.empty();
    for (const auto& point : new_data) {
        if (history.url_seen(point.url)) ++stats.repeat_count;
        if (!history.accepted_urls.count(point.url)) stats.pure_duplicate = false;
        auto it = history.global_domain_counts.find(normalize_host(point.url));
        if (it != history.global_domain_counts.end())
            stats.max_domain_count = std::max(stats.max_domain_count, it->second);
    }
    return stats;
}

std::vector<std::pair<FeatureVector, int>> extract_rows(
    const std::vector<LabeledUrl>& data, const WhoisClient& whois) {
    std::vector<std::pair<FeatureVector, int>> rows;
    rows.reserve(data.size());
    for (const auto& point : data)
        rows.emplace_back(extract_features(point.url, whois), point.label);
    return rows;
}

WeightReport calculate_weight(const std::vector<LabeledUrl>& new_data,
                              const ModelSnapshot& base_model,
                              const FeatureMatrix& base_data,
                              const SubmissionHistory& history,
                              const TrainConfig& config,
                              const WhoisClient& whois,
                              const FeatureMatrix* eval_data) {
    if (new_data.empty())
        throw EmptySubmissionError("calculate_weight: empty submission");

    const FeatureMatrix& graded_on = eval_data ? *eval_data : base_data;
    DuplicateStats dup = check_duplicates(new_data, history);

    WeightReport report;
    report.accuracy_base = evaluate(base_model, graded_on);
    if (report.accuracy_base <= 0.0)
        throw ZeroBaseAccuracyError("calculate_weight: base accuracy is zero");

    FeatureMatrix combined = base_data.extended(extract_rows(new_data, whois));
    ModelSnapshot new_model = train(combined, config);
    report.accuracy_new = evaluate(new_model, graded_on);

    report.base_weight =
        (report.accuracy_new - report.accuracy_base) / report.accuracy_base;
    report.penalty_factor = 1.0;
    for (int i = 0; i < dup.repeat_count; ++i) report.penalty_factor *= 0.9;
    report.duplicate_divisor = std::max(1, dup.max_domain_count);
    report.final_weight = report.base_weight * report.penalty_factor;

    if (dup.pure_duplicate)
        report.verdict = Verdict::RejectedDuplicate;
    else if (report.final_weight > 0.0)
        report.verdict = Verdict::Accepted;
    else
        report.verdict = Verdict::RejectedNegativeWeight;
    return report;
}

FeatureMatrix merge_accepted(const FeatureMatrix& base_data,
                             const std::vector<LabeledUrl>& new_data,
                             const WhoisClient& whois) {
    return base_data.extended(extract_rows(new_data, whois));
}

}  // namespace spamstake
