#include "spamstake/model.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "spamstake/rng.hpp"

namespace spamstake {

namespace {

using Scaling = std::array<std::pair<double, double>, FeatureVector::kCount>;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::array<double, FeatureVector::kCount> normalize(const FeatureVector& fv,
                                                    const Scaling& scaling) {
    auto raw = fv.as_array();
    std::array<double, FeatureVector::kCount> out{};
    for (size_t j = 0; j < raw.size(); ++j) {
        double span = scaling[j].second - scaling[j].first;
        out[j] = span > 0.0 ? (raw[j] - scaling[j].first) / span : 0.0;
    }
    return out;
}

Scaling compute_scaling(const std::vector<std::pair<FeatureVector, int>>& rows) {
    Scaling s{};
    for (size_t j = 0; j < FeatureVector::kCount; ++j)
        s[j] = {0.0, 0.0};
    bool first = true;
    for (const auto& [fv, label] : rows) {
        (void)label;
        auto raw = fv.as_array();
        for (size_t j = 0; j < raw.size(); ++j) {
            if (first) {
                s[j] = {raw[j], raw[j]};
            } else {
                s[j].first = std::min(s[j].first, raw[j]);
                s[j].second = std::max(s[j].second, raw[j]);
            }
        }
        first = false;
    }
    return s;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

FeatureMatrix FeatureMatrix::from_rows(std::vector<std::pair<FeatureVector, int>> rows) {
    FeatureMatrix m;
    m.scaling_ = compute_scaling(rows);
    m.rows_ = std::move(rows);
    return m;
}

FeatureMatrix FeatureMatrix::extended(
    const std::vector<std::pair<FeatureVector, int>>& extra) const {
    std::vector<std::pair<FeatureVector, int>> combined = rows_;
    combined.insert(combined.end(), extra.begin(), extra.end());
    return from_rows(std::move(combined));
}

double ModelSnapshot::score(const FeatureVector& fv) const {
    auto x = normalize(fv, scaling);
    double z = intercept;
    for (size_t j = 0; j < x.size(); ++j) z += weights[j] * x[j];
    return sigmoid(z);
}

std::string ModelSnapshot::serialize() const {
    std::ostringstream out;
    out << "weights =";
    for (double w : weights) out << ' ' << fmt_double(w);
    out << "\nintercept = " << fmt_double(intercept);
    out << "\nscaling_min =";
    for (const auto& [lo, hi] : scaling) {
        (void)hi;
        out << ' ' << fmt_double(lo);
    }
    out << "\nscaling_max =";
    for (const auto& [lo, hi] : scaling) {
        (void)lo;
        out << ' ' << fmt_double(hi);
    }
    out << "\ntraining_size = " << training_size;
    out << "\nbase_accuracy = " << fmt_double(base_accuracy) << "\n";
    return out.str();
}

ModelSnapshot ModelSnapshot::deserialize(const std::string& text) {
    ModelSnapshot snap;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key, eq;
        if (!(ls >> key >> eq) || eq != "=") continue;
        if (key == "weights") {
            for (auto& w : snap.weights) ls >> w;
        } else if (key == "intercept") {
            ls >> snap.intercept;
        } else if (key == "scaling_min") {
            for (auto& [lo, hi] : snap.scaling) {
                (void)hi;
                ls >> lo;
            }
        } else if (key == "scaling_max") {
            for (auto& [lo, hi] : snap.scaling) {
                (void)lo;
                ls >> hi;
            }
        } else if (key == "training_size") {
            ls >> snap.training_size;
        } else if (key == "base_accuracy") {
            ls >> snap.base_accuracy;
        }
    }
    return snap;
}

double logistic_objective(const std::vector<double>& params,
                          const FeatureMatrix& data, double l2) {
    const size_t k = FeatureVector::kCount;
    const double n = static_cast<double>(data.size());
    double loss = 0.0;
    for (const auto& [fv, label] : data.rows()) {
        auto x = normalize(fv, data.scaling());
        double z = params[k];
        for (size_t j = 0; j < k; ++j) z += params[j] * x[j];
        // log(1+e^z) - y z, numerically stable for large |z|
        double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        loss += softplus - label * z;
    }
    loss /= n;
    double reg = 0.0;
    for (size_t j = 0; j < k; ++j) reg += params[j] * params[j];
    return loss + 0.5 * l2 * reg;
}

std::vector<double> logistic_gradient(const std::vector<double>& params,
                                      const FeatureMatrix& data, double l2) {
    const size_t k = FeatureVector::kCount;
    const double n = static_cast<double>(data.size());
    std::vector<double> grad(k + 1, 0.0);
    for (const auto& [fv, label] : data.rows()) {
        auto x = normalize(fv, data.scaling());
        double z = params[k];
        for (size_t j = 0; j < k; ++j) z += params[j] * x[j];
        double err = sigmoid(z) - label;
        for (size_t j = 0; j < k; ++j) grad[j] += err * x[j];
        grad[k] += err;
    }
    for (size_t j = 0; j <= k; ++j) grad[j] /= n;
    for (size_t j = 0; j < k; ++j) grad[j] += l2 * params[j];
    return grad;
}

ModelSnapshot train(const FeatureMatrix& data, const TrainConfig& config) {
    if (data.size() == 0) throw EmptyDataError("train: empty feature matrix");
    bool has0 = false, has1 = false;
    for (const auto& [fv, label] : data.rows()) {
        (void)fv;
        (label == 1 ? has1 : has0) = true;
    }
    if (!has0 || !has1)
        throw DegenerateDataError("train: both classes must be present");

    const size_t k = FeatureVector::kCount;
    std::vector<double> params(k + 1, 0.0);
    for (int it = 0; it < config.iterations; ++it) {
        std::vector<double> grad = logistic_gradient(params, data, config.l2);
        for (size_t j = 0; j <= k; ++j) params[j] -= config.learning_rate * grad[j];
    }

    ModelSnapshot snap;
    for (size_t j = 0; j < k; ++j) snap.weights[j] = params[j];
    snap.intercept = params[k];
    snap.scaling = data.scaling();
    snap.training_size = data.size();
    snap.base_accuracy = evaluate(snap, data);
    return snap;
}

int predict(const ModelSnapshot& model, const FeatureVector& features) {
    return model.score(features) >= 0.5 ? 1 : 0;
}

double evaluate(const ModelSnapshot& model, const FeatureMatrix& data) {
    if (data.size() == 0) throw EmptyDataError("evaluate: empty feature matrix");
    size_t correct = 0;
    for (const auto& [fv, label] : data.rows())
        if (predict(model, fv) == label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<std::pair<size_t, double>> accuracy_curve(const FeatureMatrix& data,
                                                      const std::vector<size_t>& sizes,
                                                      const TrainConfig& config,
                                                      uint64_t seed) {
    std::vector<std::pair<size_t, double>> curve;
    curve.reserve(sizes.size());
    for (size_t s : sizes) {
        if (s == 0) throw CurveSizeError("curve size must be positive");
        if (s > data.size())
            throw CurveSizeError("curve size " + std::to_string(s) +
                                 " exceeds dataset size " + std::to_string(data.size()));
        if (s == data.size())
            throw CurveSizeError("curve size " + std::to_string(s) +
                                 " leaves an empty holdout");

        std::vector<size_t> idx(data.size());
        std::iota(idx.begin(), idx.end(), 0);
        SplitMix64 rng(seed ^ fnv1a("curve@" + std::to_string(s)));
        deterministic_shuffle(idx, rng);

        std::vector<std::pair<FeatureVector, int>> train_rows, hold_rows;
        for (size_t i = 0; i < idx.size(); ++i)
            (i < s ? train_rows : hold_rows).push_back(data.rows()[idx[i]]);

        FeatureMatrix train_m = FeatureMatrix::from_rows(std::move(train_rows));
        FeatureMatrix hold_m = FeatureMatrix::from_rows(std::move(hold_rows));
        ModelSnapshot snap = train(train_m, config);
        curve.emplace_back(s, evaluate(snap, hold_m));
    }
    return curve;
}

}  // namespace spamstake
