// Generates the bundled desk-scale dataset (data/dataset.csv + data/whois.csv).
//
// Generative rules:
//   * Every row is a synthetic .test domain with a label and a whois
//     duration. Spam domains are short-lived (low active duration), ham
//     domains long-lived; secondary features (dashes, subdomains, redirect
//     paths, domain length) are mildly spam-correlated.
//   * The seed-42 partition of the file is fixed by construction: content is
//     assigned per post-shuffle pool position, so the base set, good pool
//     and bad pool have designed compositions.
//   * The base set carries a "staircase" of spam rows whose durations are
//     calibrated against the seed-42 submission trajectory so that each
//     merged good batch flips at least one base row to correct. This yields
//     the steadily rising production accuracy the simulation defaults
//     assume.
//
// The calibration loop retrains the production model along the merge
// trajectory, measures the decision threshold in raw duration space, and
// re-places the staircase rows between consecutive thresholds until the
// placement is stable. The result is frozen into data/.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "spamstake/config.hpp"
#include "spamstake/oracle.hpp"
#include "spamstake/sim.hpp"

using namespace spamstake;

namespace {

constexpr size_t kTotalRows = 2000;
constexpr double kBaseFraction = 0.25;   // 500 rows
constexpr double kGoodFraction = 0.55;   // 1100 rows
constexpr uint64_t kPartitionSeed = 42;
constexpr int64_t kMaxDuration = 20000;
constexpr size_t kStairRows = 150;
constexpr size_t kMergesToCover = 100;  // 2 good actors x 50 rounds
constexpr size_t kBatch = 10;

enum class Role { PinSpam, PinHam, BaseHam, BaseSpam, Stair, GoodDriver, GoodSpam, GoodHam, BadSpam, BadHam };

struct RowSpec {
    Role role = Role::BaseHam;
    size_t ordinal = 0;  // index within its role (stair index etc.)
    std::string domain;
    std::string url;
    int label = 0;
    int64_t duration = 0;
};

std::string rand_label(SplitMix64& rng, size_t len) {
    std::string s;
    for (size_t i = 0; i < len; ++i)
        s += static_cast<char>('a' + rng.bounded(26));
    return s;
}

// Secondary features: mildly spam-correlated, bounded away from the pin
// rows' extremes so the base set always owns the scaling min/max.
std::string make_domain(SplitMix64& rng, bool spam, size_t uniq) {
    size_t core_len = spam ? 8 + rng.bounded(12) : 5 + rng.bounded(8);
    std::string core = rand_label(rng, core_len) + std::to_string(uniq);
    bool dash = rng.uniform01() < (spam ? 0.35 : 0.08);
    if (dash && core.size() > 3) core.insert(core.size() / 2, "-");
    size_t subs = 0;
    double u = rng.uniform01();
    if (spam)
        subs = u < 0.5 ? 0 : (u < 0.85 ? 1 : 2);
    else
        subs = u < 0.85 ? 0 : 1;
    std::string host;
    for (size_t i = 0; i < subs; ++i) host += rand_label(rng, 2 + rng.bounded(3)) + ".";
    return host + core + ".test";
}

std::string make_url(SplitMix64& rng, const std::string& domain, bool spam) {
    double u = rng.uniform01();
    std::string path = "/";
    if (u < (spam ? 0.30 : 0.04))
        path = "/go//" + rand_label(rng, 4);
    else if (u < 0.5)
        path = "/" + rand_label(rng, 3 + rng.bounded(6));
    return "http://" + domain + path;
}

int64_t ham_duration(SplitMix64& rng) {
    return 17000 + static_cast<int64_t>(rng.bounded(2900));
}

struct Corpus {
    std::vector<RowSpec> rows;          // file order
    std::vector<size_t> stair_file_idx; // file index of stair row k
};

// Reproduces the partition shuffle on indices: dest_of[file_index] gives
// the post-shuffle position, which determines the pool and pool offset.
std::vector<size_t> shuffle_destination() {
    std::vector<size_t> idx(kTotalRows);
    for (size_t i = 0; i < kTotalRows; ++i) idx[i] = i;
    SplitMix64 rng(kPartitionSeed);
    deterministic_shuffle(idx, rng);
    std::vector<size_t> dest(kTotalRows);
    for (size_t pos = 0; pos < kTotalRows; ++pos) dest[idx[pos]] = pos;
    return dest;
}

Corpus build_corpus(const std::vector<int64_t>& stair_durations) {
    const size_t n_base = 500, n_good = 1100;
    auto dest = shuffle_destination();

    Corpus corpus;
    corpus.rows.resize(kTotalRows);
    corpus.stair_file_idx.assign(kStairRows, 0);

    for (size_t file_idx = 0; file_idx < kTotalRows; ++file_idx) {
        size_t pos = dest[file_idx];
        SplitMix64 rng(fnv1a("row") ^ (0x51ed2700ULL + file_idx));
        RowSpec row;
        if (pos < n_base) {
            size_t p = pos;
            if (p == 0) {
                row = {Role::PinSpam, 0, "zz.test", "http://zz.test/", 1, 0};
            } else if (p == 1) {
                row = {Role::PinHam, 0,
                       "aaa.bbb.ccc.long-anchor-domain-name.test", "", 0, kMaxDuration};
                row.url = "http://" + row.domain + "/x//y";
            } else if (p < 290) {
                row.role = Role::BaseHam;
                row.label = 0;
                row.duration = ham_duration(rng);
                row.domain = make_domain(rng, false, file_idx);
                row.url = make_url(rng, row.domain, false);
            } else if (p < 350) {
                row.role = Role::BaseSpam;
                row.label = 1;
                row.duration = 50 + static_cast<int64_t>(rng.bounded(2500));
                row.domain = make_domain(rng, true, file_idx);
                row.url = make_url(rng, row.domain, true);
            } else {
                size_t k = p - 350;  // stair index 0..149
                char name[32];
                std::snprintf(name, sizeof(name), "stair%04zu.test", k);
                row = {Role::Stair, k, name, std::string("http://") + name + "/", 1,
                       stair_durations[k]};
                corpus.stair_file_idx[k] = file_idx;
            }
        } else if (pos < n_base + n_good) {
            // Deterministic templates: fixed secondary features and linearly
            // ramped spam durations, so the merge trajectory's decision
            // boundary drifts smoothly upward batch over batch.
            size_t p = pos - n_base;
            size_t slice = p / kBatch;
            size_t within = p % kBatch;
            char name[24];
            if (p == 0) {
                row = {Role::GoodDriver, 0, "driver0.test", "http://driver0.test/", 1, 5000};
            } else if (within < 8) {
                std::snprintf(name, sizeof(name), "gs%04zu.test", p);
                row = {Role::GoodSpam, p, name, std::string("http://") + name + "/", 1,
                       5000 + static_cast<int64_t>(40 * slice) +
                           static_cast<int64_t>(5 * within)};
            } else {
                std::snprintf(name, sizeof(name), "gh%04zu.test", p);
                row = {Role::GoodHam, p, name, std::string("http://") + name + "/", 0,
                       16000 + static_cast<int64_t>(10 * within)};
            }
        } else {
            size_t p = pos - n_base - n_good;
            if (p % kBatch < 7) {
                row.role = Role::BadSpam;
                row.label = 1;  // flipped to ham by the partition
                row.duration = 50 + static_cast<int64_t>(rng.bounded(2500));
                row.domain = make_domain(rng, true, file_idx);
                row.url = make_url(rng, row.domain, true);
            } else {
                row.role = Role::BadHam;
                row.label = 0;  // flipped to spam by the partition
                row.duration = ham_duration(rng);
                row.domain = make_domain(rng, false, file_idx);
                row.url = make_url(rng, row.domain, false);
            }
        }
        corpus.rows[file_idx] = std::move(row);
    }
    return corpus;
}

FixtureWhoisClient make_whois(const Corpus& corpus) {
    FixtureWhoisClient whois(0);
    for (const auto& row : corpus.rows) {
        // key by normalized host so lookups from extract_features hit
        whois.set(normalize_host(row.url), row.duration);
    }
    return whois;
}

std::vector<LabeledUrl> as_labeled(const Corpus& corpus) {
    std::vector<LabeledUrl> data;
    data.reserve(corpus.rows.size());
    for (const auto& row : corpus.rows) data.push_back({row.url, row.label, std::nullopt});
    return data;
}

// Raw-duration decision threshold for the staircase group (fixed secondary
// features) under a trained model. Returns NaN when duration does not
// drive the decision (non-negative weight).
double stair_threshold(const ModelSnapshot& model) {
    FeatureVector probe;
    probe.domain_length = static_cast<int64_t>(std::string("stair0000.test").size());
    probe.has_dash = 0;
    probe.is_redirect = 0;
    probe.num_subdomains = 0;
    probe.active_duration_days = 0;

    auto x = probe.as_array();
    const auto& sc = model.scaling;
    double z = model.intercept;
    for (size_t j = 0; j + 1 < FeatureVector::kCount; ++j) {
        double span = sc[j].second - sc[j].first;
        double xn = span > 0 ? (x[j] - sc[j].first) / span : 0.0;
        z += model.weights[j] * xn;
    }
    const size_t dur = FeatureVector::kCount - 1;
    double w = model.weights[dur];
    if (w >= 0) return std::nan("");
    double span = sc[dur].second - sc[dur].first;
    double xn_thresh = -z / w;  // z + w * xn = 0
    return sc[dur].first + xn_thresh * span;
}

struct Trajectory {
    double t_base = 0;
    double t_onepoint = 0;
    std::vector<double> t_after_merge;  // size kMergesToCover
};

Trajectory compute_trajectory(const Corpus& corpus, const TrainConfig& cfg) {
    auto whois = make_whois(corpus);
    auto data = as_labeled(corpus);
    auto part = partition_dataset(data, kBaseFraction, kGoodFraction, kPartitionSeed);

    FeatureMatrix production = FeatureMatrix::from_rows(extract_rows(part.base_set, whois));
    ModelSnapshot model = train(production, cfg);

    Trajectory traj;
    traj.t_base = stair_threshold(model);

    std::vector<LabeledUrl> first_point(part.good_pool.begin(), part.good_pool.begin() + 1);
    ModelSnapshot one = train(production.extended(extract_rows(first_point, whois)), cfg);
    traj.t_onepoint = stair_threshold(one);

    for (size_t m = 0; m < kMergesToCover; ++m) {
        std::vector<LabeledUrl> slice(part.good_pool.begin() + m * kBatch,
                                      part.good_pool.begin() + (m + 1) * kBatch);
        production = production.extended(extract_rows(slice, whois));
        model = train(production, cfg);
        traj.t_after_merge.push_back(stair_threshold(model));
    }
    return traj;
}

// Places one stair row inside each merge interval; extras go above the
// final threshold. Returns false when an interval cannot hold an integer
// duration.
bool place_stairs(const Trajectory& traj, std::vector<int64_t>& durations,
                  size_t* deficient) {
    std::vector<std::pair<double, double>> intervals;
    intervals.emplace_back(traj.t_base, traj.t_onepoint);
    double lo = traj.t_onepoint;
    for (double hi : traj.t_after_merge) {
        intervals.emplace_back(lo, hi);
        lo = hi;
    }

    *deficient = 0;
    std::vector<int64_t> placed;
    for (auto& [a, b] : intervals) {
        if (!(b > a)) {
            ++*deficient;
            continue;
        }
        int64_t d = static_cast<int64_t>(std::floor((a + b) / 2.0));
        if (!(static_cast<double>(d) > a)) d += 1;
        if (!(static_cast<double>(d) > a && static_cast<double>(d) <= b)) {
            ++*deficient;
            continue;
        }
        placed.push_back(d);
    }

    // Quota fillers: unambiguous short-lived spam, far below any learned
    // threshold, so they add no classification variance.
    int64_t filler = 2600;
    while (placed.size() < kStairRows) {
        placed.push_back(filler);
        filler += 40;
    }
    placed.resize(kStairRows);
    std::sort(placed.begin(), placed.end());
    durations = placed;
    return *deficient == 0;
}

void write_files(const Corpus& corpus, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "dataset.csv");
        out << "url,label\n";
        for (const auto& row : corpus.rows) out << row.url << ',' << row.label << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "whois.csv");
        out << "domain,active_duration_days\n";
        std::map<std::string, int64_t> table;
        for (const auto& row : corpus.rows) table[normalize_host(row.url)] = row.duration;
        for (const auto& [domain, days] : table) out << domain << ',' << days << '\n';
    }
}

int verify(const Corpus& corpus) {
    auto whois = make_whois(corpus);
    auto data = as_labeled(corpus);
    RunConfig cfg = default_config();
    auto part = partition_dataset(data, cfg.base_fraction, cfg.good_fraction, cfg.seed);

    SimulationTrace trace = run_simulation(part, cfg.actors, cfg.rounds, cfg.ledger,
                                           cfg.train, cfg.seed, whois);
    int failures = 0;
    size_t good_rejections = 0, bad_acceptances = 0;
    for (const auto& rec : trace.per_round) {
        bool is_bad = rec.actor == "bad1";
        if (is_bad && rec.verdict == Verdict::Accepted) ++bad_acceptances;
        if (!is_bad && rec.verdict != Verdict::Accepted) ++good_rejections;
    }
    const auto& final_balances = trace.round_balances.back();
    std::printf("sim: good_rejections=%zu bad_acceptances=%zu good1=%lld good2=%lld bad1=%lld acc %.4f -> %.4f\n",
                good_rejections, bad_acceptances,
                static_cast<long long>(final_balances.at("good1")),
                static_cast<long long>(final_balances.at("good2")),
                static_cast<long long>(final_balances.at("bad1")),
                trace.initial_accuracy, trace.round_accuracy.back());
    if (good_rejections > 0 || bad_acceptances > 0) ++failures;
    if (final_balances.at("good1") <= 5000 || final_balances.at("good2") <= 5000) ++failures;

    // Repeat-submitter scenario: first submission accepted, all later ones
    // slashed.
    std::vector<ActorSpec> repeat_roster = {
        {"repeat1", Strategy::RepeatSubmitter, 52000, 1000, 1}};
    SimulationTrace rt = run_simulation(part, repeat_roster, cfg.rounds, cfg.ledger,
                                        cfg.train, cfg.seed, whois);
    bool first_ok = rt.per_round.front().verdict == Verdict::Accepted &&
                    rt.per_round.front().reward_paid > 1000;
    size_t later_accepts = 0;
    for (size_t i = 1; i < rt.per_round.size(); ++i)
        if (rt.per_round[i].verdict == Verdict::Accepted) ++later_accepts;
    std::printf("repeat: first_accepted=%d first_reward=%lld later_accepts=%zu\n",
                first_ok ? 1 : 0,
                static_cast<long long>(rt.per_round.front().reward_paid), later_accepts);
    if (!first_ok || later_accepts > 0) ++failures;

    // Accuracy curve saturation.
    FeatureMatrix matrix = FeatureMatrix::from_rows(extract_rows(data, whois));
    std::vector<size_t> sizes{10, 50, 100, 200, 500, 1000};
    auto curve = accuracy_curve(matrix, sizes, cfg.train, cfg.seed);
    double best = 0;
    for (const auto& [s, a] : curve) best = std::max(best, a);
    bool saturated = true;
    for (const auto& [s, a] : curve) {
        std::printf("curve: size=%zu accuracy=%.4f\n", s, a);
        if (s >= 200 && best - a > 0.02) saturated = false;
    }
    if (!saturated) ++failures;

    std::printf("verify: %s\n", failures == 0 ? "all checks passed" : "FAILURES");
    return failures;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out_dir = "data";
    bool verify_only = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--out" && i + 1 < argc)
            out_dir = argv[++i];
        else if (arg == "--verify")
            verify_only = true;
    }

    TrainConfig train_cfg;  // calibration uses the shipped defaults

    // Initial staircase spread; refined by the calibration loop.
    std::vector<int64_t> stair(kStairRows);
    for (size_t k = 0; k < kStairRows; ++k)
        stair[k] = 3000 + static_cast<int64_t>(k) * 40;

    Corpus corpus = build_corpus(stair);
    for (int iter = 0; iter < 25; ++iter) {
        Trajectory traj = compute_trajectory(corpus, train_cfg);
        size_t deficient = 0;
        std::vector<int64_t> next;
        place_stairs(traj, next, &deficient);
        bool increasing = traj.t_onepoint > traj.t_base;
        double prev = traj.t_onepoint;
        for (double t : traj.t_after_merge) {
            if (!(t > prev)) increasing = false;
            prev = t;
        }
        bool stable = next == stair;
        std::printf(
            "calibrate iter=%d t_base=%.1f t_1pt=%.1f t_final=%.1f increasing=%d "
            "deficient=%zu stable=%d\n",
            iter, traj.t_base, traj.t_onepoint, traj.t_after_merge.back(),
            increasing ? 1 : 0, deficient, stable ? 1 : 0);
        stair = next;
        corpus = build_corpus(stair);
        if (stable && increasing && deficient == 0) break;
    }

    int failures = verify(corpus);
    if (!verify_only) {
        write_files(corpus, out_dir);
        std::printf("wrote %s/dataset.csv and %s/whois.csv\n", out_dir.c_str(),
                    out_dir.c_str());
    }
    return failures == 0 ? 0 : 1;
}
