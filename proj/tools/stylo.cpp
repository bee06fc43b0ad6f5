// stylo: stylometric feature extraction and analysis from the command line.
//
//   stylo extract  --input corpus.jsonl --out run/
//   stylo stats    --input run/features.csv --out run/
//   stylo pca      --input run/features.csv --out run/
//   stylo classify --input run/features.csv --test-per-class 50 --out run/
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include "stylo/error.hpp"
#include "stylo/pipeline.hpp"
#include "stylo/svg.hpp"
#include "stylo/util.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace stylo;

namespace {

struct CommonOptions {
    std::string out = ".";
    bool json = false;
};

struct ExtractOptions {
    std::string input;
    std::string format;
    std::string conllu;
    std::string vectors;
    std::string emotion;
    std::string zipf;
    std::string aoa;
    std::string depth_mode = "mean_token";
    std::string text_field = "text";
    std::string label_field = "model";
    std::string domain_field = "source";
    std::string id_field = "id";
    std::size_t threads = 0;
};

struct StatsOptions {
    std::string input;
    std::string group_by = "author_label";
    std::vector<std::string> features;
    std::string adjustment = "bonferroni";
    bool figures = true;
};

struct PcaOptions {
    std::string input;
    std::string variability = "mean_squared";
};

struct ClassifyOptions {
    std::string input;
    std::size_t test_per_class = 0;
    std::uint64_t seed = 0;
    TrainConfig train;
    std::size_t top = 10;
};

void log(const std::string& msg) { std::cerr << "stylo: " << msg << '\n'; }

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
    return fs::path(dir);
}

// Writes one output file and records its hash in the manifest.
void emit(const fs::path& dir, const std::string& name, const std::string& content, RunManifest& manifest) {
    write_file((dir / name).string(), content);
    manifest.outputs[name] = content_hash(content);
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
    ojson j = manifest.to_json(utc_timestamp());
    j["content_hash"] = manifest.content_hash();
    write_file((dir / (manifest.command + ".manifest.json")).string(), j.dump(2) + "\n");
}

CorpusFormat corpus_format(const std::string& flag, const std::string& path) {
    std::string f = flag;
    if (f.empty()) {
        const auto ext = ascii_lower(fs::path(path).extension().string());
        f = ext == ".csv" ? "csv" : "jsonl";
    }
    if (f == "jsonl" || f == "json") return CorpusFormat::jsonl;
    if (f == "csv") return CorpusFormat::csv;
    throw InputError("unknown corpus format \"" + flag + "\" (expected jsonl or csv)");
}

std::size_t thread_count(std::size_t requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_extract(const ExtractOptions& o, const CommonOptions& common) {
    RunManifest manifest;
    manifest.command = "extract";
    manifest.inputs["corpus"] = o.input;

    FieldMap fields{o.text_field, o.label_field, o.domain_field, o.id_field};
    LoadResult loaded = load_corpus(o.input, corpus_format(o.format, o.input), fields);
    for (const auto& s : loaded.report.skipped) {
        log("skipped line " + std::to_string(s.line) + ": " + s.reason);
    }
    log("loaded " + std::to_string(loaded.corpus.size()) + " documents");
    if (loaded.corpus.empty()) throw InputError("corpus has no usable documents");

    ExtractInputs inputs;
    std::uint64_t resource_hash = fnv1a("resources");
    auto note_resource = [&](const std::string& role, const std::string& path) {
        manifest.resources[role] = path;
        resource_hash = fnv1a(role + "=" + content_hash(read_file(path)) + "\n", resource_hash);
    };
    if (!o.conllu.empty()) {
        note_resource("conllu", o.conllu);
        ConlluResult parsed = read_conllu(o.conllu);
        for (const auto& d : parsed.rejected) {
            log("conllu line " + std::to_string(d.line) + " (doc " + d.doc_id + "): " + d.message);
        }
        for (auto& doc : parsed.docs) inputs.conllu.emplace(doc.doc_id, std::move(doc));
    }
    if (!o.vectors.empty()) {
        note_resource("vectors", o.vectors);
        inputs.vectors = load_external_vectors(o.vectors);
    }
    if (!o.emotion.empty()) {
        note_resource("emotion_lexicon", o.emotion);
        inputs.emotion = load_emotion_lexicon(o.emotion);
    }
    if (!o.zipf.empty()) {
        note_resource("zipf_lexicon", o.zipf);
        inputs.zipf = load_word_norms(o.zipf, NormKind::zipf);
    }
    if (!o.aoa.empty()) {
        note_resource("aoa_lexicon", o.aoa);
        inputs.aoa = load_word_norms(o.aoa, NormKind::age_of_acquisition);
    }
    if (o.depth_mode == "mean_token") {
        inputs.depth_mode = DepthMode::mean_token;
    } else if (o.depth_mode == "max_token") {
        inputs.depth_mode = DepthMode::max_token;
    } else {
        throw InputError("unknown depth mode \"" + o.depth_mode + "\" (expected mean_token or max_token)");
    }
    inputs.resource_fingerprint = resource_hash;

    const FeatureRegistry registry = build_registry(kCatalogVersion, resources_of(inputs), resource_hash);
    log("extracting " + std::to_string(registry.size()) + " features");
    const FeatureDataset data = extract_corpus(loaded.corpus, inputs, registry, thread_count(o.threads));

    manifest.catalog_version = registry.catalog_version();
    manifest.registry_fingerprint = hex64(registry.fingerprint());
    manifest.parameters = {{"format", o.format.empty() ? "auto" : o.format},
                           {"depth_mode", o.depth_mode},
                           {"fields", {{"text", o.text_field}, {"label", o.label_field},
                                       {"domain", o.domain_field}, {"id", o.id_field}}}};

    const fs::path dir = prepare_out(common.out);
    emit(dir, "features.csv", write_features_csv(data), manifest);
    write_manifest(dir, manifest);
    log("wrote " + (dir / "features.csv").string());
    if (common.json) {
        ojson summary = {{"documents", data.size()},
                         {"features", registry.size()},
                         {"skipped", loaded.report.skipped.size()},
                         {"registry_fingerprint", manifest.registry_fingerprint}};
        std::cout << summary.dump() << '\n';
    }
    return 0;
}

int cmd_stats(const StatsOptions& o, const CommonOptions& common) {
    const auto group_by = parse_group_by(o.group_by);
    if (!group_by) throw InputError("unknown --group-by \"" + o.group_by + "\" (expected author_label or domain)");
    const auto adjustment = parse_adjustment(o.adjustment);
    if (!adjustment) throw InputError("unknown --adjustment \"" + o.adjustment + "\" (bonferroni, holm or none)");

    RunManifest manifest;
    manifest.command = "stats";
    manifest.inputs["features"] = o.input;
    const FeatureDataset data = read_features_csv(o.input);
    manifest.registry_fingerprint = data.fingerprint();

    std::vector<std::string> selected;
    for (const auto& item : o.features) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!trim(part).empty()) selected.emplace_back(trim(part));
        }
    }
    const auto stats = run_stats(data, *group_by, selected, *adjustment);
    manifest.parameters = {{"group_by", o.group_by}, {"features", selected}, {"adjustment", o.adjustment}};

    const fs::path dir = prepare_out(common.out);
    const ojson report = stats_json(stats, *group_by);
    emit(dir, "stats.json", report.dump(2) + "\n", manifest);
    if (o.figures) {
        prepare_out((dir / "figures").string());
        for (const auto& fsx : stats) {
            std::vector<svg::BarSeries> bars;
            std::vector<svg::BoxSeries> boxes;
            for (std::size_t g = 0; g < fsx.labels.size(); ++g) {
                const auto& d = fsx.descriptive[g];
                bars.push_back({fsx.labels[g], d.mean, d.standard_error.value_or(0.0)});
                boxes.push_back({fsx.labels[g], d});
            }
            emit(dir, "figures/" + fsx.feature_id + "_bar.svg",
                 svg::bar_chart(fsx.feature_id, "mean +/- standard error", bars), manifest);
            emit(dir, "figures/" + fsx.feature_id + "_box.svg", svg::box_plot(fsx.feature_id, fsx.feature_id, boxes),
                 manifest);
        }
    }
    write_manifest(dir, manifest);
    log("wrote statistics for " + std::to_string(stats.size()) + " features");
    if (common.json) {
        ojson summary = ojson::object();
        for (const auto& fsx : stats) {
            summary[fsx.feature_id] = fsx.kw ? ojson{{"H", fsx.kw->H}, {"p", fsx.kw->p_value}} : ojson(nullptr);
        }
        std::cout << summary.dump() << '\n';
    }
    return 0;
}

int cmd_pca(const PcaOptions& o, const CommonOptions& common) {
    VariabilityMode mode;
    if (o.variability == "mean_squared") {
        mode = VariabilityMode::mean_squared;
    } else if (o.variability == "mean_absolute") {
        mode = VariabilityMode::mean_absolute;
    } else {
        throw InputError("unknown --variability \"" + o.variability + "\" (mean_squared or mean_absolute)");
    }
    RunManifest manifest;
    manifest.command = "pca";
    manifest.inputs["features"] = o.input;
    const FeatureDataset data = read_features_csv(o.input);
    manifest.registry_fingerprint = data.fingerprint();
    manifest.parameters = {{"variability", o.variability}};

    const PcaRun run = run_pca(data, mode);
    if (!run.standardizer.dropped.empty()) {
        std::string ids;
        for (const auto& id : run.standardizer.dropped) ids += (ids.empty() ? "" : ", ") + id;
        log("dropped " + std::to_string(run.standardizer.dropped.size()) + " constant features: " + ids);
    }

    std::map<std::string, svg::ScatterGroup> groups;
    for (std::size_t r = 0; r < data.size(); ++r) {
        auto& g = groups[data.labels[r]];
        g.label = data.labels[r];
        g.points.push_back(run.points[r]);
    }
    std::vector<svg::ScatterGroup> series;
    for (auto& [label, g] : groups) series.push_back(std::move(g));
    auto pct = [](double ratio) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * ratio);
        return std::string(buf);
    };

    const fs::path dir = prepare_out(common.out);
    emit(dir, "pca.csv", pca_csv(data, run), manifest);
    emit(dir, "variability.csv", variability_csv(run), manifest);
    emit(dir, "pca.svg",
         svg::scatter("Component reduction of text features",
                      "PC1 (" + pct(run.model.explained_variance_ratio[0]) + ")",
                      "PC2 (" + pct(run.model.explained_variance_ratio[1]) + ")", series),
         manifest);
    write_manifest(dir, manifest);
    log("explained variance " + pct(run.model.explained_variance_ratio[0]) + ", " +
        pct(run.model.explained_variance_ratio[1]));
    if (common.json) {
        ojson summary = {{"explained_variance_ratio", run.model.explained_variance_ratio},
                         {"eigenvalues", run.model.eigenvalues},
                         {"dropped", run.standardizer.dropped}};
        std::cout << summary.dump() << '\n';
    }
    return 0;
}

int cmd_classify(const ClassifyOptions& o, const CommonOptions& common) {
    RunManifest manifest;
    manifest.command = "classify";
    manifest.inputs["features"] = o.input;
    manifest.seed = o.seed;
    const FeatureDataset data = read_features_csv(o.input);
    manifest.registry_fingerprint = data.fingerprint();
    manifest.parameters = {{"test_per_class", o.test_per_class},
                           {"learning_rate", o.train.learning_rate},
                           {"max_epochs", o.train.max_epochs},
                           {"l2_strength", o.train.l2_strength},
                           {"tolerance", o.train.tolerance},
                           {"top", o.top}};

    const ClassifyRun run = run_classify(data, {o.test_per_class, o.seed}, o.train);
    const fs::path dir = prepare_out(common.out);
    emit(dir, "model.json", model_json(run.model).dump(2) + "\n", manifest);
    emit(dir, "report.json", report_json(run, o.top).dump(2) + "\n", manifest);
    write_manifest(dir, manifest);
    log("accuracy " + format_double(run.metrics.accuracy) + " on " + std::to_string(run.test_size) +
        " test documents after " + std::to_string(run.trace.epochs) + " epochs");
    if (common.json) {
        ojson summary = {{"accuracy", run.metrics.accuracy}, {"test_size", run.test_size}};
        std::cout << summary.dump() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stylometric feature extraction, group statistics, PCA and classification"};
    app.require_subcommand(1);
    CommonOptions common;
    ExtractOptions ex;
    StatsOptions st;
    PcaOptions pc;
    ClassifyOptions cl;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Output directory")->capture_default_str();
        sub->add_flag("--json", common.json, "Print a machine-readable summary on standard output");
    };

    auto* extract = app.add_subcommand("extract", "Compute the feature matrix for a corpus");
    extract->add_option("--input", ex.input, "Corpus file (JSONL or CSV)")->required();
    extract->add_option("--format", ex.format, "jsonl or csv (default: from the file extension)");
    extract->add_option("--conllu", ex.conllu, "CoNLL-U annotations keyed by '# newdoc id'");
    extract->add_option("--vectors", ex.vectors, "Sentence vectors JSONL");
    extract->add_option("--emotion-lexicon", ex.emotion, "Emotion intensity lexicon TSV");
    extract->add_option("--zipf-lexicon", ex.zipf, "Zipf frequency norms TSV");
    extract->add_option("--aoa-lexicon", ex.aoa, "Age-of-acquisition norms TSV");
    extract->add_option("--depth-mode", ex.depth_mode, "mean_token or max_token")->capture_default_str();
    extract->add_option("--text-field", ex.text_field)->capture_default_str();
    extract->add_option("--label-field", ex.label_field)->capture_default_str();
    extract->add_option("--domain-field", ex.domain_field)->capture_default_str();
    extract->add_option("--id-field", ex.id_field)->capture_default_str();
    extract->add_option("--threads", ex.threads, "Worker threads (0: all cores)")->capture_default_str();
    add_common(extract);

    auto* stats = app.add_subcommand("stats", "Kruskal-Wallis, Dunn and descriptive statistics per feature");
    stats->add_option("--input", st.input, "features.csv")->required();
    stats->add_option("--group-by", st.group_by, "author_label or domain")->capture_default_str();
    stats->add_option("--features", st.features, "Comma-separated feature ids (default: all)");
    stats->add_option("--adjustment", st.adjustment, "bonferroni, holm or none")->capture_default_str();
    stats->add_flag("!--no-figures", st.figures, "Skip the SVG figures");
    add_common(stats);

    auto* pca = app.add_subcommand("pca", "Two-component PCA and per-group centroid variability");
    pca->add_option("--input", pc.input, "features.csv")->required();
    pca->add_option("--variability", pc.variability, "mean_squared or mean_absolute")->capture_default_str();
    add_common(pca);

    auto* classify = app.add_subcommand("classify", "Train and evaluate a softmax classifier");
    classify->add_option("--input", cl.input, "features.csv")->required();
    classify->add_option("--test-per-class", cl.test_per_class, "Test documents drawn per class")->required();
    classify->add_option("--seed", cl.seed, "Split seed")->capture_default_str();
    classify->add_option("--learning-rate", cl.train.learning_rate)->capture_default_str();
    classify->add_option("--epochs", cl.train.max_epochs)->capture_default_str();
    classify->add_option("--l2", cl.train.l2_strength)->capture_default_str();
    classify->add_option("--tolerance", cl.train.tolerance)->capture_default_str();
    classify->add_option("--top", cl.top, "Coefficients listed per class")->capture_default_str();
    add_common(classify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*extract) return cmd_extract(ex, common);
        if (*stats) return cmd_stats(st, common);
        if (*pca) return cmd_pca(pc, common);
        if (*classify) return cmd_classify(cl, common);
    } catch (const NumericalError& e) {
        log(std::string("numerical failure: ") + e.what());
        return 2;
    } catch (const ParseError& e) {
        log(std::string("parse error at line ") + std::to_string(e.line()) + ": " + e.what());
        return 1;
    } catch (const InputError& e) {
        log(std::string("input error: ") + e.what());
        return 1;
    } catch (const std::exception& e) {
        log(std::string("error: ") + e.what());
        return 1;
    }
    return 1;
}
