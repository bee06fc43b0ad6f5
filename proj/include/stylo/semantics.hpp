#pragma once

#include "stylo/annotate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stylo {

/// Sparse sentence vector; entries sorted by ascending dimension.
class SentenceVector {
public:
    SentenceVector() = default;
    /// Entries must be sorted by dimension with no duplicates.
    explicit SentenceVector(std::vector<std::pair<std::uint32_t, double>> entries);
    static SentenceVector dense(std::span<const double> values);

    const std::vector<std::pair<std::uint32_t, double>>& entries() const noexcept { return entries_; }
    double norm() const noexcept { return norm_; }
    bool is_zero() const noexcept { return norm_ == 0.0; }

    SentenceVector normalized() const;
    SentenceVector scaled(double factor) const;

private:
    std::vector<std::pair<std::uint32_t, double>> entries_;
    double norm_ = 0.0;
};

double dot(const SentenceVector& u, const SentenceVector& v);

/// dot(u, v) / (|u| |v|) clamped to [-1, 1]; nullopt when either norm is 0.
std::optional<double> cosine(const SentenceVector& u, const SentenceVector& v);

/// Mean cosine over unordered pairs of non-zero vectors; nullopt when fewer
/// than two such vectors exist.
std::optional<double> doc_semantic_consistency(std::span<const SentenceVector> vectors);

/// TF-IDF over lowercased word forms with smoothed idf:
/// idf(t) = ln((1 + N) / (1 + df(t))) + 1, N = number of fitted sentences.
class TfidfModel {
public:
    const std::unordered_map<std::string, std::uint32_t>& vocabulary() const noexcept { return vocab_; }
    const std::vector<double>& idf() const noexcept { return idf_; }
    std::size_t sentence_count() const noexcept { return sentences_; }

    std::optional<std::uint32_t> index_of(const std::string& term) const;

private:
    friend class TfidfBuilder;
    std::unordered_map<std::string, std::uint32_t> vocab_;
    std::vector<double> idf_;
    std::size_t sentences_ = 0;
};

/// Incremental fitting, so large corpora never need all sentences in memory.
/// Dimensions are assigned in order of first occurrence.
class TfidfBuilder {
public:
    void add_sentence(std::span<const std::string> terms);
    /// Throws InputError when no sentence was added.
    TfidfModel build() const;

private:
    std::unordered_map<std::string, std::uint32_t> vocab_;
    std::vector<std::size_t> df_;
    std::size_t sentences_ = 0;
};

TfidfModel fit_tfidf(const std::vector<std::vector<std::string>>& sentences);

/// Term counts times idf, L2-normalized; out-of-vocabulary terms dropped. An
/// all-OOV sentence yields the zero vector.
SentenceVector vectorize(const TfidfModel& model, std::span<const std::string> terms);

/// Lowercased forms of the sentence's word tokens (PUNCT and SPACE excluded).
std::vector<std::string> sentence_terms(const Sentence& sentence);

using ExternalVectors = std::map<std::string, std::vector<SentenceVector>>;

/// JSONL, one object per document: {"id": "...", "vectors": [[...], ...]}.
/// Vectors are normalized on load. Throws InputError on ragged dimensions,
/// non-finite values or malformed lines, naming the line and document.
ExternalVectors load_external_vectors(const std::string& path);
ExternalVectors parse_external_vectors(std::string_view data);

}  // namespace stylo
