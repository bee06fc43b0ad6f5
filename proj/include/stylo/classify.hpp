#pragma once

#include "stylo/decomp.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stylo {

struct TrainConfig {
    double learning_rate = 0.1;
    std::size_t max_epochs = 2000;
    double l2_strength = 1e-3;
    double tolerance = 1e-7;
    std::uint64_t seed = 0;  // reserved; initialization is all zeros
    std::size_t threads = 1;
};

struct LogisticModel {
    std::vector<std::string> classes;
    std::vector<std::string> feature_ids;
    /// (d + 1) x k, row-major; row d holds the biases.
    Matrix weights;
    StandardizationModel standardizer;
    std::string registry_fingerprint;

    std::size_t dimension() const noexcept { return weights.rows == 0 ? 0 : weights.rows - 1; }
    std::size_t class_count() const noexcept { return classes.size(); }
};

struct TrainTrace {
    std::vector<double> loss;  // accepted loss after each epoch, starting with the initial loss
    std::size_t epochs = 0;
    std::size_t rejected_steps = 0;
    double final_learning_rate = 0.0;
};

struct LossGradient {
    double loss = 0.0;
    Matrix gradient;  // same shape as the weights
};

/// Mean cross-entropy plus (l2 / 2) * ||W without the bias row||^2.
/// `targets` are class indices. Rows are summed in the given order.
LossGradient loss_and_gradient(const Matrix& weights, const Matrix& x, std::span<const std::size_t> targets,
                               double l2_strength, std::size_t threads = 1);

/// Full-batch gradient descent from zero weights. A step that raises the
/// loss is rejected and the learning rate halved. Rows are put in a canonical
/// order first, so any permutation of the training set gives identical
/// weights. Throws InputError for fewer than 2 classes or a class with fewer
/// than 2 rows and NumericalError for a non-finite loss.
LogisticModel train(const Matrix& x, std::span<const std::string> labels, const TrainConfig& config,
                    TrainTrace* trace = nullptr);

std::vector<double> softmax(std::span<const double> logits);

/// Input is an already standardized vector. When `fingerprint` is non-empty
/// it must match the model's.
std::vector<double> predict_proba(const LogisticModel& model, std::span<const double> standardized,
                                  std::string_view fingerprint = {});

std::size_t predict(const LogisticModel& model, std::span<const double> standardized);

struct ClassMetrics {
    std::string label;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct EvalMetrics {
    std::vector<ClassMetrics> per_class;
    double accuracy = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

/// Metrics from class-index predictions; 0/0 is reported as 0.
EvalMetrics metrics_from_predictions(std::span<const std::string> classes, std::span<const std::size_t> truth,
                                     std::span<const std::size_t> predicted);

/// Throws InputError on an empty test set or a label outside model.classes.
EvalMetrics evaluate(const LogisticModel& model, const Matrix& x, std::span<const std::string> labels);

/// Non-bias coefficients of one class column, sorted descending (by absolute
/// value when `by_absolute`); ties keep registry order.
std::vector<std::pair<std::string, double>> top_features(const LogisticModel& model, const std::string& label,
                                                         std::size_t k = 10, bool by_absolute = false);

}  // namespace stylo
