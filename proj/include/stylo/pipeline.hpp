#pragma once

#include "stylo/classify.hpp"
#include "stylo/corpus.hpp"
#include "stylo/decomp.hpp"
#include "stylo/features.hpp"
#include "stylo/stats.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stylo {

using ojson = nlohmann::ordered_json;

/// Documents x features with their metadata, as stored in features.csv.
struct FeatureDataset {
    std::vector<std::string> doc_ids;
    std::vector<std::string> labels;
    std::vector<std::string> domains;
    FeatureTable table;

    std::size_t size() const noexcept { return doc_ids.size(); }
    /// Fingerprint of the ordered feature ids.
    std::string fingerprint() const;
};

/// Header "doc_id,author_label,domain,<ids>"; missing values are empty cells
/// and numbers use the shortest round-trip form.
std::string write_features_csv(const FeatureDataset& data);
/// Throws ParseError on a bad header, a ragged row or a non-numeric cell.
FeatureDataset parse_features_csv(std::string_view csv);
FeatureDataset read_features_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Extraction

struct ExtractInputs {
    /// Pre-annotated documents keyed by id; others use the builtin annotator.
    std::map<std::string, AnnotatedDoc> conllu;
    std::optional<ExternalVectors> vectors;
    std::optional<WordNormLexicon> zipf;
    std::optional<WordNormLexicon> aoa;
    std::optional<EmotionLexicon> emotion;
    DepthMode depth_mode = DepthMode::mean_token;
    std::uint64_t resource_fingerprint = 0;
};

/// Annotates every document, fits TF-IDF over all sentences, then extracts
/// features. Work is spread across `threads` workers; rows stay in corpus
/// order and results do not depend on the thread count.
FeatureDataset extract_corpus(const Corpus& corpus, const ExtractInputs& inputs, const FeatureRegistry& registry,
                              std::size_t threads = 1);

ResourceSet resources_of(const ExtractInputs& inputs);

// ---------------------------------------------------------------------------
// Group statistics

enum class GroupBy { author_label, domain };

std::optional<GroupBy> parse_group_by(std::string_view name);

struct FeatureStats {
    std::string feature_id;
    std::vector<std::string> labels;
    std::vector<Descriptive> descriptive;
    std::optional<KruskalWallisResult> kw;
    std::optional<DunnResult> dunn;
    std::string note;  // why the tests were skipped, if they were
};

/// Throws InputError naming the valid ids when a selected feature is unknown.
/// An empty selection means every feature.
std::vector<FeatureStats> run_stats(const FeatureDataset& data, GroupBy group_by,
                                    const std::vector<std::string>& selected, PAdjustment adjustment);

ojson stats_json(const std::vector<FeatureStats>& stats, GroupBy group_by);

// ---------------------------------------------------------------------------
// PCA

struct PcaRun {
    StandardizationModel standardizer;
    PcaModel model;
    std::vector<std::array<double, 2>> points;
    std::vector<GroupVariability> variability;
};

PcaRun run_pca(const FeatureDataset& data, VariabilityMode mode = VariabilityMode::mean_squared);

std::string pca_csv(const FeatureDataset& data, const PcaRun& run);
std::string variability_csv(const PcaRun& run);

// ---------------------------------------------------------------------------
// Classification

struct ClassifyRun {
    LogisticModel model;
    TrainTrace trace;
    EvalMetrics metrics;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

/// Stratified split on author labels, standardization fitted on the train
/// rows only, training and evaluation on the test rows.
ClassifyRun run_classify(const FeatureDataset& data, const SplitSpec& split, const TrainConfig& config);

ojson model_json(const LogisticModel& model);
LogisticModel model_from_json(const ojson& j);
ojson report_json(const ClassifyRun& run, std::size_t top_k = 10);

// ---------------------------------------------------------------------------
// Run manifest

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> inputs;     // role -> path
    std::map<std::string, std::string> resources;  // role -> path
    ojson parameters = ojson::object();
    std::uint64_t seed = 0;
    std::string catalog_version;
    std::string registry_fingerprint;
    std::map<std::string, std::string> outputs;  // file name -> content hash

    /// Hash of every field; the timestamp is not part of it.
    std::string content_hash() const;
    ojson to_json(const std::string& timestamp) const;
};

std::string content_hash(std::string_view bytes);
std::string utc_timestamp();

inline constexpr std::string_view kToolVersion = "1.0.0";

}  // namespace stylo
