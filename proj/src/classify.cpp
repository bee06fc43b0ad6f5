#include "stylo/classify.hpp"

#include "stylo/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

namespace stylo {

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.begin(), logits.end());
    if (p.empty()) return p;
    const double mx = *std::max_element(p.begin(), p.end());
    double sum = 0.0;
    for (auto& v : p) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

namespace {

constexpr std::size_t kChunkRows = 256;

struct Partial {
    double loss = 0.0;
    std::vector<double> grad;
};

void accumulate_rows(const Matrix& w, const Matrix& x, std::span<const std::size_t> targets, std::size_t begin,
                     std::size_t end, Partial& out) {
    const std::size_t d = x.cols;
    const std::size_t k = w.cols;
    out.grad.assign((d + 1) * k, 0.0);
    std::vector<double> logits(k);
    for (std::size_t r = begin; r < end; ++r) {
        const auto row = x.row(r);
        for (std::size_t c = 0; c < k; ++c) {
            double z = w(d, c);
            for (std::size_t i = 0; i < d; ++i) z += row[i] * w(i, c);
            logits[c] = z;
        }
        const double mx = *std::max_element(logits.begin(), logits.end());
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) sum += std::exp(logits[c] - mx);
        const double log_norm = mx + std::log(sum);
        out.loss += log_norm - logits[targets[r]];
        for (std::size_t c = 0; c < k; ++c) {
            const double delta = std::exp(logits[c] - log_norm) - (c == targets[r] ? 1.0 : 0.0);
            if (delta == 0.0) continue;
            for (std::size_t i = 0; i < d; ++i) out.grad[i * k + c] += delta * row[i];
            out.grad[d * k + c] += delta;
        }
    }
}

}  // namespace

LossGradient loss_and_gradient(const Matrix& weights, const Matrix& x, std::span<const std::size_t> targets,
                               double l2_strength, std::size_t threads) {
    const std::size_t n = x.rows;
    const std::size_t d = x.cols;
    const std::size_t k = weights.cols;
    if (weights.rows != d + 1) throw InputError("weight matrix does not match the feature dimension");
    if (targets.size() != n) throw InputError("target count does not match the row count");
    if (n == 0) throw InputError("no training rows");

    const std::size_t chunks = (n + kChunkRows - 1) / kChunkRows;
    std::vector<Partial> parts(chunks);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t ch = first; ch < chunks; ch += stride) {
            accumulate_rows(weights, x, targets, ch * kChunkRows, std::min(n, (ch + 1) * kChunkRows), parts[ch]);
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, chunks));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
        for (auto& th : pool) th.join();
    }

    // Chunk results are combined in chunk order whatever the thread count.
    LossGradient out;
    out.gradient = Matrix(d + 1, k);
    for (const auto& part : parts) {
        out.loss += part.loss;
        for (std::size_t j = 0; j < part.grad.size(); ++j) out.gradient.data[j] += part.grad[j];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    for (auto& g : out.gradient.data) g *= inv_n;

    double penalty = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
            const double wv = weights(i, c);
            penalty += wv * wv;
            out.gradient(i, c) += l2_strength * wv;
        }
    }
    out.loss += 0.5 * l2_strength * penalty;
    return out;
}

LogisticModel train(const Matrix& x, std::span<const std::string> labels, const TrainConfig& config,
                    TrainTrace* trace) {
    if (labels.size() != x.rows) throw InputError("label count does not match the row count");
    if (!(config.learning_rate > 0.0)) throw InputError("learning rate must be positive");
    if (config.l2_strength < 0.0) throw InputError("l2 strength must be non-negative");
    if (!(config.tolerance > 0.0)) throw InputError("tolerance must be positive");

    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    if (counts.size() < 2) throw InputError("training needs at least 2 classes");
    for (const auto& [label, c] : counts) {
        if (c < 2) throw InputError("class " + label + " has fewer than 2 training rows");
    }

    LogisticModel model;
    for (const auto& [label, c] : counts) model.classes.push_back(label);
    const std::size_t k = model.classes.size();
    const std::size_t d = x.cols;

    // Canonical row order: by label, then lexicographically by feature values.
    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (labels[a] != labels[b]) return labels[a] < labels[b];
        const auto ra = x.row(a);
        const auto rb = x.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    Matrix xs(x.rows, d);
    std::vector<std::size_t> targets(x.rows);
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto src = x.row(order[r]);
        std::copy(src.begin(), src.end(), xs.row(r).begin());
        targets[r] = static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), labels[order[r]]) - model.classes.begin());
    }

    model.weights = Matrix(d + 1, k);
    double lr = config.learning_rate;
    LossGradient current = loss_and_gradient(model.weights, xs, targets, config.l2_strength, config.threads);
    if (!std::isfinite(current.loss)) throw NumericalError("non-finite loss at epoch 0");
    TrainTrace local;
    local.loss.push_back(current.loss);

    std::size_t epoch = 0;
    while (epoch < config.max_epochs) {
        ++epoch;
        Matrix candidate = model.weights;
        for (std::size_t j = 0; j < candidate.data.size(); ++j) candidate.data[j] -= lr * current.gradient.data[j];
        LossGradient next = loss_and_gradient(candidate, xs, targets, config.l2_strength, config.threads);
        if (!std::isfinite(next.loss)) {
            throw NumericalError("non-finite loss at epoch " + std::to_string(epoch));
        }
        const double decrease = current.loss - next.loss;
        if (decrease < 0.0) {
            ++local.rejected_steps;
            lr *= 0.5;
            if (lr < 1e-12) break;
            continue;
        }
        model.weights = std::move(candidate);
        current = std::move(next);
        local.loss.push_back(current.loss);
        if (decrease < config.tolerance) break;
    }
    for (double w : model.weights.data) {
        if (!std::isfinite(w)) throw NumericalError("non-finite weight after training");
    }
    local.epochs = epoch;
    local.final_learning_rate = lr;
    if (trace) *trace = std::move(local);
    return model;
}

std::vector<double> predict_proba(const LogisticModel& model, std::span<const double> standardized,
                                  std::string_view fingerprint) {
    if (!fingerprint.empty() && fingerprint != model.registry_fingerprint) {
        throw InputError("feature registry fingerprint does not match the model");
    }
    const std::size_t d = model.dimension();
    if (standardized.size() != d) {
        throw InputError("model expects " + std::to_string(d) + " features, got " + std::to_string(standardized.size()));
    }
    const std::size_t k = model.weights.cols;
    std::vector<double> logits(k);
    for (std::size_t c = 0; c < k; ++c) {
        double z = model.weights(d, c);
        for (std::size_t i = 0; i < d; ++i) z += standardized[i] * model.weights(i, c);
        logits[c] = z;
    }
    return softmax(logits);
}

std::size_t predict(const LogisticModel& model, std::span<const double> standardized) {
    const auto p = predict_proba(model, standardized);
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

EvalMetrics metrics_from_predictions(std::span<const std::string> classes, std::span<const std::size_t> truth,
                                     std::span<const std::size_t> predicted) {
    if (truth.empty()) throw InputError("evaluation needs a non-empty test set");
    if (truth.size() != predicted.size()) throw InputError("prediction count does not match the label count");
    const std::size_t k = classes.size();
    EvalMetrics m;
    m.confusion.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] >= k || predicted[i] >= k) throw InputError("class index out of range");
        ++m.confusion[truth[i]][predicted[i]];
    }
    std::size_t correct = 0;
    for (std::size_t c = 0; c < k; ++c) {
        correct += m.confusion[c][c];
        std::size_t row = 0;
        std::size_t col = 0;
        for (std::size_t j = 0; j < k; ++j) {
            row += m.confusion[c][j];
            col += m.confusion[j][c];
        }
        ClassMetrics cm;
        cm.label = classes[c];
        cm.support = row;
        const double tp = static_cast<double>(m.confusion[c][c]);
        cm.precision = col == 0 ? 0.0 : tp / static_cast<double>(col);
        cm.recall = row == 0 ? 0.0 : tp / static_cast<double>(row);
        cm.f1 = cm.precision + cm.recall == 0.0 ? 0.0 : 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall);
        m.per_class.push_back(std::move(cm));
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    return m;
}

EvalMetrics evaluate(const LogisticModel& model, const Matrix& x, std::span<const std::string> labels) {
    if (labels.empty()) throw InputError("evaluation needs a non-empty test set");
    if (labels.size() != x.rows) throw InputError("label count does not match the row count");
    std::vector<std::size_t> truth;
    std::vector<std::size_t> predicted;
    for (std::size_t r = 0; r < x.rows; ++r) {
        const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), labels[r]);
        if (it == model.classes.end() || *it != labels[r]) {
            throw InputError("test label " + labels[r] + " was not seen in training");
        }
        truth.push_back(static_cast<std::size_t>(it - model.classes.begin()));
        predicted.push_back(predict(model, x.row(r)));
    }
    return metrics_from_predictions(model.classes, truth, predicted);
}

std::vector<std::pair<std::string, double>> top_features(const LogisticModel& model, const std::string& label,
                                                         std::size_t k, bool by_absolute) {
    const auto it = std::find(model.classes.begin(), model.classes.end(), label);
    if (it == model.classes.end()) throw InputError("unknown class: " + label);
    const auto c = static_cast<std::size_t>(it - model.classes.begin());
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < model.dimension(); ++i) {
        const std::string id = i < model.feature_ids.size() ? model.feature_ids[i] : std::to_string(i);
        out.emplace_back(id, model.weights(i, c));
    }
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        const double va = by_absolute ? std::fabs(a.second) : a.second;
        const double vb = by_absolute ? std::fabs(b.second) : b.second;
        return va > vb;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

}  // namespace stylo
