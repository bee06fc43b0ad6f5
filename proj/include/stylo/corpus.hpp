#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stylo {

struct DocumentRecord {
    std::string id;
    std::string text;
    std::string author_label;
    std::string domain;

    bool operator==(const DocumentRecord&) const = default;
};

/// Immutable once built; `labels` and `domains` are exactly the distinct
/// values present in `records`.
class Corpus {
public:
    Corpus() = default;
    /// Throws InputError on duplicate or empty ids.
    explicit Corpus(std::vector<DocumentRecord> records);

    const std::vector<DocumentRecord>& records() const noexcept { return records_; }
    const std::set<std::string>& labels() const noexcept { return labels_; }
    const std::set<std::string>& domains() const noexcept { return domains_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    bool operator==(const Corpus&) const = default;

private:
    std::vector<DocumentRecord> records_;
    std::set<std::string> labels_;
    std::set<std::string> domains_;
};

enum class CorpusFormat { jsonl, csv };

/// Column / key names used when reading records.
struct FieldMap {
    std::string text = "text";
    std::string label = "model";
    std::string domain = "source";
    std::string id = "id";
};

struct SkippedRecord {
    std::size_t line;  // 1-based
    std::string reason;
    bool malformed;  // syntactically broken, as opposed to failing validation
};

struct LoadReport {
    std::size_t lines_read = 0;
    std::vector<SkippedRecord> skipped;
};

struct LoadResult {
    Corpus corpus;
    LoadReport report;
};

/// Fraction of malformed data lines above which loading fails.
inline constexpr double kMaxMalformedFraction = 0.01;

/// Reads a JSONL or CSV corpus. Records that fail validation (missing key,
/// blank text, duplicate id) are skipped and reported. Syntactically broken
/// lines are skipped too, unless they exceed kMaxMalformedFraction of the
/// data lines, in which case InputError is thrown. A missing id becomes the
/// zero-based data line index in decimal.
LoadResult load_corpus(const std::string& path, CorpusFormat format, const FieldMap& fields = {});
LoadResult parse_corpus(std::string_view data, CorpusFormat format, const FieldMap& fields = {});

struct SplitSpec {
    std::size_t per_class_test_count = 0;
    std::uint64_t seed = 0;
};

/// Row indices of a stratified split; both lists are ascending.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Draws exactly `per_class_test_count` test rows per label.
///
/// Sampling uses std::mt19937_64 (the output sequence is fixed by the C++
/// standard) seeded once with `spec.seed`. Labels are visited in ascending
/// byte order; within a label, row indices in input order undergo a partial
/// Fisher-Yates shuffle whose bounded draws use rejection sampling on the
/// raw 64-bit outputs, so results never depend on the standard library's
/// distribution implementations.
SplitIndices stratified_split_indices(std::span<const std::string> labels, const SplitSpec& spec);

std::pair<Corpus, Corpus> stratified_split(const Corpus& corpus, const SplitSpec& spec);

struct CorpusSummary {
    std::map<std::string, std::size_t> by_label;
    std::map<std::string, std::size_t> by_domain;
    std::map<std::pair<std::string, std::string>, std::size_t> by_label_domain;
};

CorpusSummary corpus_summary(const Corpus& corpus);

}  // namespace stylo
