#include "stylo/pipeline.hpp"

#include "stylo/error.hpp"
#include "stylo/util.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace stylo {

namespace {

constexpr std::string_view kMetaColumns[] = {"doc_id", "author_label", "domain"};

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

ojson number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

ojson optional_number(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

}  // namespace

std::string FeatureDataset::fingerprint() const { return hex64(feature_list_fingerprint(table.feature_ids)); }

std::string write_features_csv(const FeatureDataset& data) {
    std::string out;
    std::vector<std::string> header(std::begin(kMetaColumns), std::end(kMetaColumns));
    header.insert(header.end(), data.table.feature_ids.begin(), data.table.feature_ids.end());
    out += csv_join(header);
    out += '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        std::vector<std::string> fields = {data.doc_ids[r], data.labels[r], data.domains[r]};
        for (std::size_t c = 0; c < data.table.values.cols; ++c) {
            fields.push_back(data.table.is_missing(r, c) ? std::string() : format_double(data.table.values(r, c)));
        }
        out += csv_join(fields);
        out += '\n';
    }
    return out;
}

FeatureDataset parse_features_csv(std::string_view csv) {
    CsvReader reader(csv);
    CsvRow row;
    if (!reader.next(row)) throw ParseError("feature file is empty", 1);
    if (row.fields.size() < 3 || row.fields[0] != kMetaColumns[0] || row.fields[1] != kMetaColumns[1] ||
        row.fields[2] != kMetaColumns[2]) {
        throw ParseError("feature file header must start with doc_id,author_label,domain", row.line);
    }
    FeatureDataset data;
    data.table.feature_ids.assign(row.fields.begin() + 3, row.fields.end());
    const std::size_t d = data.table.feature_ids.size();
    std::set<std::string> seen;
    for (const auto& id : data.table.feature_ids) {
        if (!seen.insert(id).second) throw ParseError("duplicate feature column " + id, row.line);
    }

    std::vector<double> values;
    std::vector<std::vector<bool>> missing;
    bool any_missing = false;
    while (reader.next(row)) {
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;  // blank line
        if (row.fields.size() != d + 3) {
            throw ParseError("expected " + std::to_string(d + 3) + " fields, found " + std::to_string(row.fields.size()),
                             row.line);
        }
        data.doc_ids.push_back(row.fields[0]);
        data.labels.push_back(row.fields[1]);
        data.domains.push_back(row.fields[2]);
        std::vector<bool> miss(d, false);
        for (std::size_t c = 0; c < d; ++c) {
            const std::string& cell = row.fields[c + 3];
            if (trim(cell).empty()) {
                miss[c] = true;
                any_missing = true;
                values.push_back(0.0);
                continue;
            }
            const auto v = parse_double(cell);
            if (!v || !std::isfinite(*v)) {
                throw ParseError("non-numeric value \"" + cell + "\" for " + data.table.feature_ids[c], row.line);
            }
            values.push_back(*v);
        }
        missing.push_back(std::move(miss));
    }
    data.table.values.rows = data.doc_ids.size();
    data.table.values.cols = d;
    data.table.values.data = std::move(values);
    if (any_missing) data.table.missing = std::move(missing);
    return data;
}

FeatureDataset read_features_csv(const std::string& path) { return parse_features_csv(read_file(path)); }

// ---------------------------------------------------------------------------

ResourceSet resources_of(const ExtractInputs& inputs) {
    ResourceSet r;
    r.zipf_lexicon = inputs.zipf.has_value();
    r.aoa_lexicon = inputs.aoa.has_value();
    r.emotion_lexicon = inputs.emotion.has_value();
    r.dependencies = true;  // builtin annotation always supplies heads
    return r;
}

FeatureDataset extract_corpus(const Corpus& corpus, const ExtractInputs& inputs, const FeatureRegistry& registry,
                              std::size_t threads) {
    const auto& records = corpus.records();
    const std::size_t n = records.size();

    std::vector<AnnotatedDoc> docs(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const auto& rec = records[i];
        if (auto it = inputs.conllu.find(rec.id); it != inputs.conllu.end()) {
            docs[i] = it->second;
        } else {
            docs[i] = annotate_text(rec.id, rec.text);
        }
    });

    std::optional<TfidfModel> tfidf;
    TfidfBuilder builder;
    std::size_t sentences = 0;
    for (const auto& doc : docs) {
        for (const auto& sent : doc.sentences) {
            const auto terms = sentence_terms(sent);
            builder.add_sentence(terms);
            ++sentences;
        }
    }
    if (sentences > 0) tfidf = builder.build();

    ExtractionResources res;
    res.zipf = inputs.zipf ? &*inputs.zipf : nullptr;
    res.aoa = inputs.aoa ? &*inputs.aoa : nullptr;
    res.emotion = inputs.emotion ? &*inputs.emotion : nullptr;
    res.depth_mode = inputs.depth_mode;
    res.tfidf = tfidf ? &*tfidf : nullptr;
    res.external = inputs.vectors ? &*inputs.vectors : nullptr;

    std::vector<FeatureVector> vectors(n);
    parallel_for(n, threads, [&](std::size_t i) { vectors[i] = extract_all(docs[i], records[i].text, registry, res); });

    FeatureDataset data;
    data.table.feature_ids = registry.ids();
    const std::size_t d = registry.size();
    data.table.values = Matrix(n, d);
    bool any_missing = false;
    std::vector<std::vector<bool>> missing(n);
    for (std::size_t i = 0; i < n; ++i) {
        data.doc_ids.push_back(records[i].id);
        data.labels.push_back(records[i].author_label);
        data.domains.push_back(records[i].domain);
        std::copy(vectors[i].values.begin(), vectors[i].values.end(), data.table.values.row(i).begin());
        missing[i] = vectors[i].missing;
        any_missing = any_missing || std::find(missing[i].begin(), missing[i].end(), true) != missing[i].end();
    }
    if (any_missing) data.table.missing = std::move(missing);
    return data;
}

// ---------------------------------------------------------------------------

std::optional<GroupBy> parse_group_by(std::string_view name) {
    if (name == "author_label" || name == "model" || name == "label") return GroupBy::author_label;
    if (name == "domain" || name == "source") return GroupBy::domain;
    return std::nullopt;
}

std::vector<FeatureStats> run_stats(const FeatureDataset& data, GroupBy group_by,
                                    const std::vector<std::string>& selected, PAdjustment adjustment) {
    const auto& ids = data.table.feature_ids;
    std::vector<std::size_t> columns;
    if (selected.empty()) {
        for (std::size_t c = 0; c < ids.size(); ++c) columns.push_back(c);
    } else {
        for (const auto& want : selected) {
            const auto it = std::find(ids.begin(), ids.end(), want);
            if (it == ids.end()) {
                std::string valid;
                for (const auto& id : ids) valid += (valid.empty() ? "" : ", ") + id;
                throw InputError("unknown feature id \"" + want + "\"; valid ids: " + valid);
            }
            columns.push_back(static_cast<std::size_t>(it - ids.begin()));
        }
    }
    const auto& keys = group_by == GroupBy::author_label ? data.labels : data.domains;

    std::vector<FeatureStats> out;
    for (auto c : columns) {
        FeatureStats fs;
        fs.feature_id = ids[c];
        std::map<std::string, std::vector<double>> groups;
        for (std::size_t r = 0; r < data.size(); ++r) {
            if (data.table.is_missing(r, c)) continue;
            groups[keys[r]].push_back(data.table.values(r, c));
        }
        GroupedSamples samples{fs.feature_id, {}};
        std::size_t total = 0;
        for (auto& [label, values] : groups) {
            fs.labels.push_back(label);
            fs.descriptive.push_back(descriptive(values));
            total += values.size();
            samples.groups.emplace_back(label, std::move(values));
        }
        if (samples.groups.size() < 2) {
            fs.note = "fewer than two groups with values";
        } else if (total < 3) {
            fs.note = "fewer than three observations";
        } else {
            fs.kw = kruskal_wallis(samples);
            fs.dunn = dunn_test(samples, adjustment);
        }
        out.push_back(std::move(fs));
    }
    return out;
}

ojson stats_json(const std::vector<FeatureStats>& stats, GroupBy group_by) {
    ojson root = ojson::object();
    root["group_by"] = group_by == GroupBy::author_label ? "author_label" : "domain";
    ojson features = ojson::object();
    for (const auto& fs : stats) {
        ojson f = ojson::object();
        if (fs.kw) {
            f["H"] = number_or_null(fs.kw->H);
            f["df"] = fs.kw->df;
            f["p"] = number_or_null(fs.kw->p_value);
            f["tie_correction"] = number_or_null(fs.kw->tie_correction);
        } else {
            f["H"] = nullptr;
            f["df"] = nullptr;
            f["p"] = nullptr;
            f["tie_correction"] = nullptr;
            f["note"] = fs.note;
        }
        ojson dunn = ojson::object();
        if (fs.dunn) {
            dunn["adjustment"] = std::string(adjustment_name(fs.dunn->adjustment));
            ojson pairs = ojson::object();
            const auto& L = fs.dunn->labels;
            for (std::size_t i = 0; i < L.size(); ++i) {
                for (std::size_t j = i + 1; j < L.size(); ++j) {
                    pairs[L[i] + "|" + L[j]] = {{"z", number_or_null(fs.dunn->z[i][j])},
                                                {"p_raw", number_or_null(fs.dunn->p_raw[i][j])},
                                                {"p_adj", number_or_null(fs.dunn->p_adjusted[i][j])}};
                }
            }
            dunn["pairs"] = std::move(pairs);
        }
        f["dunn"] = std::move(dunn);
        ojson desc = ojson::object();
        for (std::size_t g = 0; g < fs.labels.size(); ++g) {
            const auto& d = fs.descriptive[g];
            desc[fs.labels[g]] = {{"n", d.n},
                                  {"mean", number_or_null(d.mean)},
                                  {"variance", optional_number(d.variance)},
                                  {"sd", optional_number(d.sd)},
                                  {"standard_error", optional_number(d.standard_error)},
                                  {"min", number_or_null(d.min)},
                                  {"q1", number_or_null(d.q1)},
                                  {"median", number_or_null(d.median)},
                                  {"q3", number_or_null(d.q3)},
                                  {"max", number_or_null(d.max)}};
        }
        f["descriptive"] = std::move(desc);
        features[fs.feature_id] = std::move(f);
    }
    root["features"] = std::move(features);
    return root;
}

// ---------------------------------------------------------------------------

PcaRun run_pca(const FeatureDataset& data, VariabilityMode mode) {
    if (data.size() < 3) throw InputError("PCA needs at least 3 documents");
    PcaRun run;
    run.standardizer = standardize_fit(data.table);
    const Matrix z = run.standardizer.transform(data.table);
    run.model = pca_fit(z);
    run.points.reserve(z.rows);
    std::vector<GroupKey> keys;
    for (std::size_t r = 0; r < z.rows; ++r) {
        run.points.push_back(project(run.model, z.row(r)));
        keys.push_back({data.labels[r], data.domains[r]});
    }
    run.variability = group_variability(run.points, keys, mode);
    return run;
}

std::string pca_csv(const FeatureDataset& data, const PcaRun& run) {
    std::string out = "doc_id,author_label,domain,pc1,pc2\n";
    for (std::size_t r = 0; r < run.points.size(); ++r) {
        out += csv_join({data.doc_ids[r], data.labels[r], data.domains[r], format_double(run.points[r][0]),
                         format_double(run.points[r][1])});
        out += '\n';
    }
    return out;
}

std::string variability_csv(const PcaRun& run) {
    std::string out = "author_label,domain,n,variability\n";
    for (const auto& g : run.variability) {
        out += csv_join({g.key.label, g.key.domain, std::to_string(g.n), format_double(g.variability)});
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------

ClassifyRun run_classify(const FeatureDataset& data, const SplitSpec& split, const TrainConfig& config) {
    if (split.per_class_test_count == 0) throw InputError("per-class test count must be positive (empty test set)");
    const SplitIndices idx = stratified_split_indices(data.labels, split);
    if (idx.test.empty()) throw InputError("empty test set");

    auto subset = [&](const std::vector<std::size_t>& rows) {
        FeatureTable t;
        t.feature_ids = data.table.feature_ids;
        t.values = Matrix(rows.size(), data.table.values.cols);
        if (!data.table.missing.empty()) t.missing.reserve(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const auto src = data.table.values.row(rows[k]);
            std::copy(src.begin(), src.end(), t.values.row(k).begin());
            if (!data.table.missing.empty()) t.missing.push_back(data.table.missing[rows[k]]);
        }
        return t;
    };
    const FeatureTable train_table = subset(idx.train);
    const FeatureTable test_table = subset(idx.test);
    std::vector<std::string> train_labels, test_labels;
    for (auto r : idx.train) train_labels.push_back(data.labels[r]);
    for (auto r : idx.test) test_labels.push_back(data.labels[r]);

    ClassifyRun run;
    run.train_size = idx.train.size();
    run.test_size = idx.test.size();
    StandardizationModel standardizer = standardize_fit(train_table);
    const Matrix z_train = standardizer.transform(train_table);
    const Matrix z_test = standardizer.transform(test_table);
    run.model = train(z_train, train_labels, config, &run.trace);
    run.model.feature_ids = standardizer.feature_ids;
    run.model.standardizer = std::move(standardizer);
    run.model.registry_fingerprint = data.fingerprint();
    run.metrics = evaluate(run.model, z_test, test_labels);
    return run;
}

ojson model_json(const LogisticModel& model) {
    ojson j = ojson::object();
    j["classes"] = model.classes;
    j["registry_fingerprint"] = model.registry_fingerprint;
    j["feature_ids"] = model.feature_ids;
    ojson st = ojson::object();
    st["feature_ids"] = model.standardizer.feature_ids;
    st["source_columns"] = model.standardizer.source_columns;
    st["mean"] = model.standardizer.mean;
    st["sd"] = model.standardizer.sd;
    st["dropped"] = model.standardizer.dropped;
    j["standardizer"] = std::move(st);
    j["weights"] = {{"rows", model.weights.rows}, {"cols", model.weights.cols}, {"data", model.weights.data}};
    return j;
}

LogisticModel model_from_json(const ojson& j) {
    try {
        LogisticModel m;
        m.classes = j.at("classes").get<std::vector<std::string>>();
        m.registry_fingerprint = j.at("registry_fingerprint").get<std::string>();
        m.feature_ids = j.at("feature_ids").get<std::vector<std::string>>();
        const auto& st = j.at("standardizer");
        m.standardizer.feature_ids = st.at("feature_ids").get<std::vector<std::string>>();
        m.standardizer.source_columns = st.at("source_columns").get<std::vector<std::size_t>>();
        m.standardizer.mean = st.at("mean").get<std::vector<double>>();
        m.standardizer.sd = st.at("sd").get<std::vector<double>>();
        m.standardizer.dropped = st.at("dropped").get<std::vector<std::string>>();
        const auto& w = j.at("weights");
        m.weights.rows = w.at("rows").get<std::size_t>();
        m.weights.cols = w.at("cols").get<std::size_t>();
        m.weights.data = w.at("data").get<std::vector<double>>();
        if (m.weights.data.size() != m.weights.rows * m.weights.cols || m.weights.cols != m.classes.size() ||
            m.weights.rows != m.feature_ids.size() + 1) {
            throw InputError("model weights do not match the class and feature counts");
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model file: ") + e.what());
    }
}

ojson report_json(const ClassifyRun& run, std::size_t top_k) {
    ojson j = ojson::object();
    j["train_size"] = run.train_size;
    j["test_size"] = run.test_size;
    j["epochs"] = run.trace.epochs;
    j["final_loss"] = run.trace.loss.empty() ? ojson(nullptr) : ojson(run.trace.loss.back());
    j["accuracy"] = run.metrics.accuracy;
    ojson per_class = ojson::object();
    for (const auto& c : run.metrics.per_class) {
        per_class[c.label] = {{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
    }
    j["per_class"] = std::move(per_class);
    j["confusion"] = {{"labels", run.model.classes}, {"matrix", run.metrics.confusion}};
    ojson top = ojson::object();
    for (const auto& label : run.model.classes) {
        ojson list = ojson::array();
        for (const auto& [id, coef] : top_features(run.model, label, top_k)) {
            list.push_back({{"feature", id}, {"coefficient", coef}});
        }
        top[label] = std::move(list);
    }
    j["top_features"] = std::move(top);
    return j;
}

// ---------------------------------------------------------------------------

std::string content_hash(std::string_view bytes) { return hex64(fnv1a(bytes)); }

std::string RunManifest::content_hash() const {
    return stylo::content_hash(to_json("").dump());
}

ojson RunManifest::to_json(const std::string& timestamp) const {
    ojson j = ojson::object();
    j["command"] = command;
    j["inputs"] = inputs;
    j["resources"] = resources;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["catalog_version"] = catalog_version;
    j["registry_fingerprint"] = registry_fingerprint;
    j["tool_version"] = std::string(kToolVersion);
    j["outputs"] = outputs;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace stylo
