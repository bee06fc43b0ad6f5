#include "stylo/semantics.hpp"

#include "stylo/error.hpp"
#include "stylo/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace stylo {

namespace {

double l2(const std::vector<std::pair<std::uint32_t, double>>& entries) {
    double s = 0.0;
    for (const auto& e : entries) s += e.second * e.second;
    return std::sqrt(s);
}

}  // namespace

SentenceVector::SentenceVector(std::vector<std::pair<std::uint32_t, double>> entries)
    : entries_(std::move(entries)), norm_(l2(entries_)) {}

SentenceVector SentenceVector::dense(std::span<const double> values) {
    std::vector<std::pair<std::uint32_t, double>> e;
    e.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0) e.emplace_back(static_cast<std::uint32_t>(i), values[i]);
    }
    return SentenceVector(std::move(e));
}

SentenceVector SentenceVector::normalized() const {
    if (norm_ == 0.0) return *this;
    return scaled(1.0 / norm_);
}

SentenceVector SentenceVector::scaled(double factor) const {
    auto e = entries_;
    for (auto& x : e) x.second *= factor;
    return SentenceVector(std::move(e));
}

double dot(const SentenceVector& u, const SentenceVector& v) {
    const auto& a = u.entries();
    const auto& b = v.entries();
    double s = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            s += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return s;
}

std::optional<double> cosine(const SentenceVector& u, const SentenceVector& v) {
    if (u.is_zero() || v.is_zero()) return std::nullopt;
    const double c = dot(u, v) / (u.norm() * v.norm());
    return std::clamp(c, -1.0, 1.0);
}

std::optional<double> doc_semantic_consistency(std::span<const SentenceVector> vectors) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].is_zero()) continue;
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            if (auto c = cosine(vectors[i], vectors[j])) {
                sum += *c;
                ++pairs;
            }
        }
    }
    if (pairs == 0) return std::nullopt;
    return sum / static_cast<double>(pairs);
}

std::optional<std::uint32_t> TfidfModel::index_of(const std::string& term) const {
    auto it = vocab_.find(term);
    if (it == vocab_.end()) return std::nullopt;
    return it->second;
}

void TfidfBuilder::add_sentence(std::span<const std::string> terms) {
    ++sentences_;
    std::vector<std::uint32_t> seen;
    seen.reserve(terms.size());
    for (const auto& t : terms) {
        auto [it, inserted] = vocab_.try_emplace(t, static_cast<std::uint32_t>(df_.size()));
        if (inserted) df_.push_back(0);
        seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto idx : seen) ++df_[idx];
}

TfidfModel TfidfBuilder::build() const {
    if (sentences_ == 0) throw InputError("cannot fit TF-IDF on an empty sentence set");
    TfidfModel m;
    m.vocab_ = vocab_;
    m.sentences_ = sentences_;
    m.idf_.resize(df_.size());
    const double n = static_cast<double>(sentences_);
    for (std::size_t i = 0; i < df_.size(); ++i) {
        m.idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df_[i]))) + 1.0;
    }
    return m;
}

TfidfModel fit_tfidf(const std::vector<std::vector<std::string>>& sentences) {
    TfidfBuilder b;
    for (const auto& s : sentences) b.add_sentence(s);
    return b.build();
}

SentenceVector vectorize(const TfidfModel& model, std::span<const std::string> terms) {
    std::vector<std::pair<std::uint32_t, double>> e;
    for (const auto& t : terms) {
        if (auto idx = model.index_of(t)) e.emplace_back(*idx, 1.0);
    }
    std::sort(e.begin(), e.end());
    std::vector<std::pair<std::uint32_t, double>> merged;
    for (const auto& x : e) {
        if (!merged.empty() && merged.back().first == x.first) merged.back().second += 1.0;
        else merged.push_back(x);
    }
    for (auto& x : merged) x.second *= model.idf()[x.first];
    return SentenceVector(std::move(merged)).normalized();
}

std::vector<std::string> sentence_terms(const Sentence& sentence) {
    std::vector<std::string> terms;
    terms.reserve(sentence.tokens.size());
    for (const auto& t : sentence.tokens) {
        if (t.upos == Upos::PUNCT || t.upos == Upos::SPACE) continue;
        terms.push_back(t.lower);
    }
    return terms;
}

ExternalVectors parse_external_vectors(std::string_view data) {
    ExternalVectors out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < data.size()) {
        auto end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        const std::string_view line = data.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        } catch (const nlohmann::json::out_of_range&) {
            throw InputError("non-finite vector entry (line " + std::to_string(line_no) + ")");
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("vectors") ||
            !obj["vectors"].is_array()) {
            throw ParseError("expected {\"id\": ..., \"vectors\": [[...]]}", line_no);
        }
        std::string id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
        std::vector<SentenceVector> vectors;
        std::optional<std::size_t> dim;
        for (const auto& row : obj["vectors"]) {
            if (!row.is_array()) throw ParseError("vector for document " + id + " is not an array", line_no);
            if (dim && row.size() != *dim) {
                throw InputError("ragged vector dimensions in document " + id + " (line " +
                                 std::to_string(line_no) + ")");
            }
            dim = row.size();
            std::vector<double> values;
            values.reserve(row.size());
            for (const auto& x : row) {
                if (!x.is_number()) throw ParseError("non-numeric vector entry in document " + id, line_no);
                const double v = x.get<double>();
                if (!std::isfinite(v)) throw InputError("non-finite vector entry in document " + id);
                values.push_back(v);
            }
            vectors.push_back(SentenceVector::dense(values).normalized());
        }
        out[id] = std::move(vectors);
    }
    return out;
}

ExternalVectors load_external_vectors(const std::string& path) {
    return parse_external_vectors(read_file(path));
}

}  // namespace stylo
