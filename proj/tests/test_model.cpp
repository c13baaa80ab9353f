#include <doctest.h>

#include <cmath>

#include "spamstake/model.hpp"
#include "spamstake/rng.hpp"

using namespace spamstake;

namespace {

FeatureVector fv(int64_t len, int dash, int redirect, int64_t subs, int64_t days) {
    FeatureVector f;
    f.domain_length = len;
    f.has_dash = dash;
    f.is_redirect = redirect;
    f.num_subdomains = subs;
    f.active_duration_days = days;
    return f;
}

// Small deterministic mixed-class dataset.
FeatureMatrix toy_matrix(size_t n, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::pair<FeatureVector, int>> rows;
    for (size_t i = 0; i < n; ++i) {
        int label = static_cast<int>(rng.bounded(2));
        int64_t days = label == 1 ? static_cast<int64_t>(rng.bounded(800))
                                  : 2000 + static_cast<int64_t>(rng.bounded(3000));
        rows.emplace_back(fv(8 + static_cast<int64_t>(rng.bounded(20)),
                             static_cast<int>(rng.bounded(2)),
                             static_cast<int>(rng.bounded(2)),
                             static_cast<int64_t>(rng.bounded(3)), days),
                          label);
    }
    rows.emplace_back(fv(10, 0, 0, 0, 100), 1);  // guarantee both classes
    rows.emplace_back(fv(10, 0, 0, 0, 4000), 0);
    return FeatureMatrix::from_rows(std::move(rows));
}

}  // namespace

TEST_CASE("train: separable toy set reaches training accuracy 1.0") {
    std::vector<std::pair<FeatureVector, int>> rows = {
        {fv(10, 0, 0, 0, 10), 1},
        {fv(11, 1, 0, 0, 50), 1},
        {fv(9, 0, 0, 0, 5000), 0},
        {fv(12, 0, 1, 1, 6000), 0},
    };
    auto data = FeatureMatrix::from_rows(rows);
    TrainConfig cfg;
    cfg.iterations = 3000;
    auto snap = train(data, cfg);
    CHECK(evaluate(snap, data) == doctest::Approx(1.0));
    CHECK(snap.training_size == 4);
}

TEST_CASE("train: degenerate single-class data rejected") {
    std::vector<std::pair<FeatureVector, int>> rows = {
        {fv(10, 0, 0, 0, 10), 1},
        {fv(11, 1, 0, 0, 50), 1},
    };
    CHECK_THROWS_AS(train(FeatureMatrix::from_rows(rows), TrainConfig{}),
                    DegenerateDataError);
    CHECK_THROWS_AS(train(FeatureMatrix{}, TrainConfig{}), EmptyDataError);
}

TEST_CASE("train: bit-identical across runs") {
    auto data = toy_matrix(60, 11);
    auto a = train(data, TrainConfig{});
    auto b = train(data, TrainConfig{});
    for (size_t j = 0; j < FeatureVector::kCount; ++j) CHECK(a.weights[j] == b.weights[j]);
    CHECK(a.intercept == b.intercept);
    CHECK(a.serialize() == b.serialize());
}

TEST_CASE("predict: threshold rule with tie as spam") {
    ModelSnapshot snap;  // zero weights, zero intercept -> score exactly 0.5
    for (auto& [lo, hi] : snap.scaling) lo = 0, hi = 1;
    CHECK(snap.score(fv(0, 0, 0, 0, 0)) == doctest::Approx(0.5));
    CHECK(predict(snap, fv(0, 0, 0, 0, 0)) == 1);

    snap.intercept = 3.0;
    CHECK(predict(snap, fv(0, 0, 0, 0, 0)) == 1);  // score ~0.95
    snap.intercept = -3.0;
    CHECK(predict(snap, fv(0, 0, 0, 0, 0)) == 0);  // score ~0.05
}

TEST_CASE("evaluate: extremes and complement identity") {
    auto data = toy_matrix(80, 5);
    auto snap = train(data, TrainConfig{});
    double acc = evaluate(snap, data);
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);

    // majority-class baseline
    size_t ones = 0;
    for (const auto& [f, label] : data.rows()) ones += static_cast<size_t>(label);
    double prior = std::max(ones, data.size() - ones) / static_cast<double>(data.size());
    CHECK(acc >= prior - 1e-12);

    // complement-labeled dataset mirrors the accuracy
    auto flipped_rows = data.rows();
    for (auto& [f, label] : flipped_rows) label = 1 - label;
    auto flipped = FeatureMatrix::from_rows(flipped_rows);
    CHECK(evaluate(snap, flipped) == doctest::Approx(1.0 - acc));

    CHECK_THROWS_AS(evaluate(snap, FeatureMatrix{}), EmptyDataError);
}

TEST_CASE("gradient matches central finite differences") {
    auto data = toy_matrix(40, 77);
    const double l2 = 1e-3;
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> params(FeatureVector::kCount + 1);
        for (auto& p : params) p = (rng.uniform01() - 0.5) * 4.0;
        auto grad = logistic_gradient(params, data, l2);
        const double h = 1e-6;
        for (size_t j = 0; j < params.size(); ++j) {
            auto plus = params, minus = params;
            plus[j] += h;
            minus[j] -= h;
            double fd = (logistic_objective(plus, data, l2) -
                         logistic_objective(minus, data, l2)) /
                        (2 * h);
            double scale = std::max({1.0, std::fabs(fd), std::fabs(grad[j])});
            CHECK(std::fabs(grad[j] - fd) / scale < 1e-4);
        }
    }
}

TEST_CASE("scaling: verdicts invariant under stored normalization") {
    auto data = toy_matrix(50, 31);
    auto snap = train(data, TrainConfig{});
    // Predicting a raw row equals thresholding the score computed from the
    // stored normalized representation.
    for (const auto& [f, label] : data.rows()) {
        (void)label;
        auto raw = f.as_array();
        double z = snap.intercept;
        for (size_t j = 0; j < raw.size(); ++j) {
            double span = snap.scaling[j].second - snap.scaling[j].first;
            double xn = span > 0 ? (raw[j] - snap.scaling[j].first) / span : 0.0;
            z += snap.weights[j] * xn;
        }
        int direct = z >= 0 ? 1 : 0;
        CHECK(predict(snap, f) == direct);
    }
}

TEST_CASE("snapshot serialization round-trips") {
    auto data = toy_matrix(30, 9);
    auto snap = train(data, TrainConfig{});
    auto back = ModelSnapshot::deserialize(snap.serialize());
    CHECK(back.serialize() == snap.serialize());
    CHECK(back.training_size == snap.training_size);
}

TEST_CASE("accuracy_curve: determinism and size errors") {
    auto data = toy_matrix(120, 3);
    TrainConfig cfg;
    cfg.iterations = 100;
    std::vector<size_t> sizes{10, 40, 80};
    auto c1 = accuracy_curve(data, sizes, cfg, 42);
    auto c2 = accuracy_curve(data, sizes, cfg, 42);
    REQUIRE(c1.size() == 3);
    for (size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].first == c2[i].first);
        CHECK(c1[i].second == c2[i].second);
    }

    CHECK_THROWS_AS(accuracy_curve(data, {data.size() + 1}, cfg, 42), CurveSizeError);
    CHECK_THROWS_AS(accuracy_curve(data, {data.size()}, cfg, 42), CurveSizeError);
}
