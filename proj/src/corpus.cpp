#include "stylo/corpus.hpp"

#include "stylo/error.hpp"
#include "stylo/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace stylo {

Corpus::Corpus(std::vector<DocumentRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string> seen;
    seen.reserve(records_.size());
    for (const auto& r : records_) {
        if (r.id.empty()) throw InputError("document with empty id");
        if (!seen.insert(r.id).second) throw InputError("duplicate document id: " + r.id);
        labels_.insert(r.author_label);
        domains_.insert(r.domain);
    }
}

namespace {

struct RecordBuilder {
    const FieldMap& fields;
    LoadReport& report;
    std::vector<DocumentRecord> records;
    std::unordered_set<std::string> ids;
    std::size_t data_lines = 0;
    std::size_t malformed = 0;

    void malformed_line(std::size_t line, std::string reason) {
        ++malformed;
        report.skipped.push_back({line, std::move(reason), true});
    }

    void invalid(std::size_t line, std::string reason) {
        report.skipped.push_back({line, std::move(reason), false});
    }

    void add(std::size_t line, std::size_t index, std::optional<std::string> id,
             std::optional<std::string> text, std::optional<std::string> label,
             std::optional<std::string> domain) {
        if (!text) return invalid(line, "missing field \"" + fields.text + "\"");
        if (!label) return invalid(line, "missing field \"" + fields.label + "\"");
        if (!domain) return invalid(line, "missing field \"" + fields.domain + "\"");
        if (trim(*text).empty()) return invalid(line, "empty text");
        std::string rid = id ? *id : std::to_string(index);
        if (rid.empty()) return invalid(line, "empty id");
        if (!ids.insert(rid).second) return invalid(line, "duplicate id " + rid);
        records.push_back({std::move(rid), std::move(*text), std::move(*label), std::move(*domain)});
    }
};

std::optional<std::string> json_string(const nlohmann::json& obj, const std::string& key,
                                       bool allow_number = false) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (allow_number && it->is_number_integer()) return std::to_string(it->get<long long>());
    return std::nullopt;
}

void parse_jsonl(std::string_view data, RecordBuilder& b) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < data.size()) {
        auto end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        std::string_view line = data.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (trim(line).empty()) continue;
        const std::size_t index = b.data_lines++;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            b.malformed_line(line_no, std::string("invalid JSON: ") + e.what());
            continue;
        }
        if (!obj.is_object()) {
            b.malformed_line(line_no, "line is not a JSON object");
            continue;
        }
        b.add(line_no, index, json_string(obj, b.fields.id, true), json_string(obj, b.fields.text),
              json_string(obj, b.fields.label), json_string(obj, b.fields.domain));
    }
}

void parse_csv(std::string_view data, RecordBuilder& b) {
    CsvReader reader(data);
    CsvRow header;
    if (!reader.next(header)) return;
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.fields.size(); ++i) col.emplace(header.fields[i], i);
    auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = col.find(name);
        if (it == col.end()) return std::nullopt;
        return it->second;
    };
    const auto c_text = column(b.fields.text);
    const auto c_label = column(b.fields.label);
    const auto c_domain = column(b.fields.domain);
    const auto c_id = column(b.fields.id);

    CsvRow row;
    while (true) {
        try {
            if (!reader.next(row)) break;
        } catch (const ParseError& e) {
            // An unterminated quote swallows the rest of the file.
            ++b.data_lines;
            b.malformed_line(e.line(), e.what());
            break;
        }
        if (row.fields.size() == 1 && trim(row.fields[0]).empty()) continue;
        const std::size_t index = b.data_lines++;
        if (row.fields.size() != header.fields.size()) {
            b.malformed_line(row.line, "expected " + std::to_string(header.fields.size()) +
                                           " fields, found " + std::to_string(row.fields.size()));
            continue;
        }
        auto get = [&](std::optional<std::size_t> c) -> std::optional<std::string> {
            if (!c) return std::nullopt;
            return row.fields[*c];
        };
        auto id = get(c_id);
        if (id && id->empty()) id.reset();
        b.add(row.line, index, std::move(id), get(c_text), get(c_label), get(c_domain));
    }
}

}  // namespace

LoadResult parse_corpus(std::string_view data, CorpusFormat format, const FieldMap& fields) {
    LoadReport report;
    RecordBuilder b{fields, report, {}, {}, 0, 0};
    if (format == CorpusFormat::jsonl) {
        parse_jsonl(data, b);
    } else {
        parse_csv(data, b);
    }
    report.lines_read = b.data_lines;
    if (b.data_lines > 0 &&
        static_cast<double>(b.malformed) > kMaxMalformedFraction * static_cast<double>(b.data_lines)) {
        throw InputError(std::to_string(b.malformed) + " of " + std::to_string(b.data_lines) +
                         " lines are malformed (limit 1%)");
    }
    return {Corpus(std::move(b.records)), std::move(report)};
}

LoadResult load_corpus(const std::string& path, CorpusFormat format, const FieldMap& fields) {
    return parse_corpus(read_file(path), format, fields);
}

namespace {

// Uniform integer in [0, bound) by rejection on raw 64-bit draws.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    while (true) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace

SplitIndices stratified_split_indices(std::span<const std::string> labels, const SplitSpec& spec) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);

    for (const auto& [label, rows] : by_label) {
        if (spec.per_class_test_count > rows.size()) {
            throw InputError("test count " + std::to_string(spec.per_class_test_count) +
                             " exceeds size of class \"" + label + "\" (" +
                             std::to_string(rows.size()) + " records)");
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<char> in_test(labels.size(), 0);
    for (auto& [label, rows] : by_label) {
        const std::size_t n = rows.size();
        for (std::size_t i = 0; i < spec.per_class_test_count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
            std::swap(rows[i], rows[j]);
            in_test[rows[i]] = 1;
        }
    }

    SplitIndices out;
    for (std::size_t i = 0; i < labels.size(); ++i) (in_test[i] ? out.test : out.train).push_back(i);
    return out;
}

std::pair<Corpus, Corpus> stratified_split(const Corpus& corpus, const SplitSpec& spec) {
    std::vector<std::string> labels;
    labels.reserve(corpus.size());
    for (const auto& r : corpus.records()) labels.push_back(r.author_label);
    const auto idx = stratified_split_indices(labels, spec);

    auto pick = [&](const std::vector<std::size_t>& rows) {
        std::vector<DocumentRecord> out;
        out.reserve(rows.size());
        for (auto i : rows) out.push_back(corpus.records()[i]);
        return Corpus(std::move(out));
    };
    return {pick(idx.train), pick(idx.test)};
}

CorpusSummary corpus_summary(const Corpus& corpus) {
    CorpusSummary s;
    for (const auto& r : corpus.records()) {
        ++s.by_label[r.author_label];
        ++s.by_domain[r.domain];
        ++s.by_label_domain[{r.author_label, r.domain}];
    }
    return s;
}

}  // namespace stylo
