#pragma once

#include "stylo/annotate.hpp"
#include "stylo/semantics.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylo {

enum class Family { surface, lexical_diversity, pos, readability, lexicon, entity, emotion, syntax, semantics };

std::string_view family_name(Family f);

enum class Resource : std::uint8_t { zipf_lexicon, aoa_lexicon, emotion_lexicon, dependencies };

struct ResourceSet {
    bool zipf_lexicon = false;
    bool aoa_lexicon = false;
    bool emotion_lexicon = false;
    bool dependencies = false;

    bool has(Resource r) const;
    static ResourceSet all() { return {true, true, true, true}; }
};

struct FeatureSpec {
    std::string id;
    Family family;
    std::vector<Resource> needs;
};

inline constexpr std::string_view kCatalogVersion = "v1";

class FeatureRegistry {
public:
    FeatureRegistry(std::string catalog_version, std::vector<FeatureSpec> specs,
                    std::uint64_t resource_fingerprint);

    const std::vector<FeatureSpec>& specs() const noexcept { return specs_; }
    std::size_t size() const noexcept { return specs_.size(); }
    const std::string& catalog_version() const noexcept { return version_; }
    std::uint64_t resource_fingerprint() const noexcept { return resource_fingerprint_; }
    /// Hash of catalog version, resource fingerprint and the ordered ids.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    std::vector<std::string> ids() const;

private:
    std::string version_;
    std::vector<FeatureSpec> specs_;
    std::unordered_map<std::string, std::size_t> index_;
    std::uint64_t resource_fingerprint_;
    std::uint64_t fingerprint_;
};

/// Every catalog feature whose requirements are met, in catalog order.
/// Throws InputError for an unknown catalog version.
FeatureRegistry build_registry(std::string_view catalog_version, const ResourceSet& resources,
                               std::uint64_t resource_fingerprint = 0);

/// Fingerprint over a list of feature ids alone (used when only a header is known).
std::uint64_t feature_list_fingerprint(const std::vector<std::string>& ids);

struct FeatureVector {
    std::string doc_id;
    std::vector<double> values;
    std::vector<bool> missing;
};

// ---------------------------------------------------------------------------
// Lexicons

inline constexpr std::array<std::string_view, 8> kEmotions = {
    "anger", "disgust", "fear", "sadness", "joy", "anticipation", "surprise", "trust"};

std::optional<std::size_t> emotion_index(std::string_view name);

class EmotionLexicon {
public:
    using Intensities = std::array<double, kEmotions.size()>;

    /// Throws InputError if the intensity is outside [0, 1] or the emotion
    /// is not one of kEmotions.
    void set(std::string_view word, std::string_view emotion, double intensity);
    const Intensities* find(std::string_view lower_word) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::unordered_map<std::string, Intensities> entries_;
};

/// TSV: word TAB emotion TAB score. '#' comments and a non-numeric header
/// line are skipped.
EmotionLexicon parse_emotion_lexicon(std::string_view data);
EmotionLexicon load_emotion_lexicon(const std::string& path);

enum class NormKind { zipf, age_of_acquisition };

class WordNormLexicon {
public:
    explicit WordNormLexicon(NormKind kind) : kind_(kind) {}

    /// Throws InputError outside [0, 8] (zipf) or [0, 30] (AoA).
    void set(std::string_view word, double value);
    std::optional<double> find(std::string_view lower_word) const;
    NormKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    NormKind kind_;
    std::unordered_map<std::string, double> entries_;
};

/// TSV: word TAB value.
WordNormLexicon parse_word_norms(std::string_view data, NormKind kind);
WordNormLexicon load_word_norms(const std::string& path, NormKind kind);

// ---------------------------------------------------------------------------
// Extraction

/// Partial result of one extractor; nullopt marks an undefined value.
using FeatureValues = std::map<std::string, std::optional<double>>;

FeatureValues extract_surface(const AnnotatedDoc& doc, std::string_view raw_text);
FeatureValues extract_diversity(const AnnotatedDoc& doc);
/// Uses raw_text for the SPACE class (whitespace code points).
FeatureValues extract_pos_features(const AnnotatedDoc& doc, std::string_view raw_text);
FeatureValues extract_readability(const AnnotatedDoc& doc);
/// Either lexicon may be null; its features are then not produced.
FeatureValues extract_lexicon_features(const AnnotatedDoc& doc, const WordNormLexicon* zipf,
                                       const WordNormLexicon* aoa);

struct EntityCounts {
    std::size_t dates = 0;
    std::size_t cardinals = 0;
};

/// Dates: a capitalized month name with optional day and year ("May"
/// needs a day or year), day + month [+ year], ISO YYYY-MM-DD, and any other
/// four-digit year from 1500 to 2099. Cardinals: remaining numeric tokens
/// (digit groups joined by ',' or '.') and runs of number words.
EntityCounts extract_entity_regex(std::string_view raw_text);
FeatureValues extract_entity(std::string_view raw_text);

FeatureValues extract_emotion(const AnnotatedDoc& doc, const EmotionLexicon& lex);

struct ExtractionResources {
    const WordNormLexicon* zipf = nullptr;
    const WordNormLexicon* aoa = nullptr;
    const EmotionLexicon* emotion = nullptr;
    DepthMode depth_mode = DepthMode::mean_token;
    /// Sentence vectors come from `external` when it has the document,
    /// otherwise from `tfidf`; with neither, semantic_consistency is missing.
    const TfidfModel* tfidf = nullptr;
    const ExternalVectors* external = nullptr;
};

ResourceSet available_resources(const ExtractionResources& r, bool dependencies = true);

/// Computes every registry feature; anything undefined or failing is masked
/// missing.
FeatureVector extract_all(const AnnotatedDoc& doc, std::string_view raw_text,
                          const FeatureRegistry& registry, const ExtractionResources& resources);

// Feature ids used by reports and acceptance checks.
namespace feature_ids {
inline constexpr std::string_view kUniqueWords = "total_number_of_unique_words";
inline constexpr std::string_view kWords = "total_number_of_words";
inline constexpr std::string_view kSyntacticDepth = "syntactic_depth";
inline constexpr std::string_view kSemanticConsistency = "semantic_consistency";
inline constexpr std::string_view kAverageEmotion = "average_emotion";
}  // namespace feature_ids

}  // namespace stylo
