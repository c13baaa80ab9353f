#ifndef SPAMSTAKE_MODEL_HPP
#define SPAMSTAKE_MODEL_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spamstake/features.hpp"

namespace spamstake {

struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CurveSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainConfig {
    double learning_rate = 0.1;
    int iterations = 500;
    double l2 = 1e-3;
};

// Raw feature rows plus the per-feature (min, max) used for normalization.
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    // Computes scaling statistics from `rows`.
    static FeatureMatrix from_rows(std::vector<std::pair<FeatureVector, int>> rows);

    // Base rows extended with extra rows; scaling recomputed over the union.
    FeatureMatrix extended(const std::vector<std::pair<FeatureVector, int>>& extra) const;

    const std::vector<std::pair<FeatureVector, int>>& rows() const { return rows_; }
    size_t size() const { return rows_.size(); }
    const std::array<std::pair<double, double>, FeatureVector::kCount>& scaling() const {
        return scaling_;
    }

private:
    std::vector<std::pair<FeatureVector, int>> rows_;
    std::array<std::pair<double, double>, FeatureVector::kCount> scaling_{};
};

// Fitted logistic-regression coefficients plus the normalization statistics
// of the split they were trained on.
struct ModelSnapshot {
    std::array<double, FeatureVector::kCount> weights{};
    double intercept = 0.0;
    std::array<std::pair<double, double>, FeatureVector::kCount> scaling{};
    size_t training_size = 0;
    double base_accuracy = 0.0;

    double score(const FeatureVector& fv) const;

    // Flat text record (field = values), stable across runs.
    std::string serialize() const;
    static ModelSnapshot deserialize(const std::string& text);
};

// Full-batch gradient descent, zero initialization, fixed iteration count.
// Deterministic for fixed (data, config). Throws DegenerateDataError unless
// both classes are present.
ModelSnapshot train(const FeatureMatrix& data, const TrainConfig& config);

// Fraction of rows whose thresholded prediction matches the label.
double evaluate(const ModelSnapshot& model, const FeatureMatrix& data);

// Threshold at 0.5; a tie scores as spam.
int predict(const ModelSnapshot& model, const FeatureVector& features);

// For each size: train on a seeded subsample, evaluate on the held-out
// remainder. Throws CurveSizeError when a size exceeds the row count or
// leaves an empty holdout.
std::vector<std::pair<size_t, double>> accuracy_curve(const FeatureMatrix& data,
                                                      const std::vector<size_t>& sizes,
                                                      const TrainConfig& config,
                                                      uint64_t seed);

// Training objective and its analytic gradient, exposed so the gradient can
// be checked against finite differences. Parameter layout: weights then
// intercept. The L2 term covers weights only.
double logistic_objective(const std::vector<double>& params,
                          const FeatureMatrix& data, double l2);
std::vector<double> logistic_gradient(const std::vector<double>& params,
                                      const FeatureMatrix& data, double l2);

}  // namespace spamstake

#endif
