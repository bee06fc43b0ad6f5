// Acceptance suite: one PASS / FAIL / SKIP line per criterion.
//
// The dataset criterion runs only when STYLO_M4_PATH names the M4 subtask B
// English JSONL file. Optional companions:
//   STYLO_M4_EMOTION         emotion lexicon TSV (needed for average_emotion)
//   STYLO_M4_VECTORS         sentence vectors JSONL
//   STYLO_M4_FRACTION        stratified subsample fraction (default 0.1)
//   STYLO_M4_TEST_PER_CLASS  classifier test documents per class (default 500)

#include "stylo/annotate.hpp"
#include "stylo/classify.hpp"
#include "stylo/corpus.hpp"
#include "stylo/decomp.hpp"
#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/pipeline.hpp"
#include "stylo/semantics.hpp"
#include "stylo/stats.hpp"
#include "stylo/util.hpp"

#include "fixtures.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

using namespace stylo;

namespace {

// Collects failed sub-checks for one criterion.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++total_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << (total_ - failed_) << "/" << total_ << " checks";
        for (const auto& f : failures_) s << "; " << f;
        return s.str();
    }

private:
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

GroupedSamples grouped(std::vector<std::vector<double>> values) {
    GroupedSamples s;
    for (std::size_t i = 0; i < values.size(); ++i) s.groups.emplace_back("g" + std::to_string(i), std::move(values[i]));
    return s;
}

// ---------------------------------------------------------------------------

void statistical_oracles(Checks& c) {
    const auto kw = kruskal_wallis(grouped({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
    c.expect(std::fabs(kw.H - 7.2) <= 1e-9, "H = " + fmt(kw.H));
    c.expect(std::fabs(kw.p_value - std::exp(-3.6)) <= 1e-9, "p = " + fmt(kw.p_value));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ux(0.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng);
        const double got = chi_square_sf(x, 2);
        c.expect(std::fabs(got - std::exp(-x / 2.0)) <= 1e-12, "chi_square_sf(" + fmt(x) + ", 2) = " + fmt(got));
    }

    const auto dunn = dunn_test(grouped({{1, 2, 3}, {4, 5, 6}}));
    // The quoted -1.9640 is the 4-decimal rounding of -3 / sqrt(7/3).
    c.expect(std::fabs(dunn.z[0][1] + 3.0 / std::sqrt(7.0 / 3.0)) <= 1e-6 && std::fabs(dunn.z[0][1] + 1.9640) <= 5e-5,
             "dunn z = " + fmt(dunn.z[0][1]));

    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 200;
        std::vector<double> v(n);
        for (auto& x : v) x = static_cast<double>(rng() % 20);
        const auto r = rank_with_ties(v);
        const double sum = std::accumulate(r.begin(), r.end(), 0.0);
        c.expect(std::fabs(sum - n * (n + 1) / 2.0) <= 1e-9 * n * n, "rank sum for N = " + std::to_string(n));
    }
}

// ---------------------------------------------------------------------------

Matrix standardize(const Matrix& m) {
    FeatureTable t;
    for (std::size_t c = 0; c < m.cols; ++c) t.feature_ids.push_back("f" + std::to_string(c));
    t.values = m;
    return standardize_fit(t).transform(t);
}

void pca_analytic(Checks& c) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> norm(0.0, 1.0);
    for (double rho : {0.0, 0.5, 0.8}) {
        // Exact sample correlation rho via Gram-Schmidt on centred columns.
        const std::size_t n = 300;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = norm(rng);
            y[i] = norm(rng);
        }
        auto centre_unit = [n](std::vector<double>& v) {
            const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
            double ss = 0.0;
            for (auto& a : v) {
                a -= mean;
                ss += a * a;
            }
            for (auto& a : v) a /= std::sqrt(ss);
        };
        centre_unit(x);
        centre_unit(y);
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += x[i] * y[i];
        for (std::size_t i = 0; i < n; ++i) y[i] -= d * x[i];
        centre_unit(y);
        Matrix m(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, 0) = 5.0 * x[i] + 1.0;
            m(i, 1) = 2.0 * (rho * x[i] + std::sqrt(1.0 - rho * rho) * y[i]) + 7.0;
        }
        const auto model = pca_fit(standardize(m));
        const auto& r = model.explained_variance_ratio;
        c.expect(std::fabs(r[0] - (1.0 + rho) / 2.0) <= 1e-6 && std::fabs(r[1] - (1.0 - rho) / 2.0) <= 1e-6,
                 "rho " + fmt(rho) + " ratios (" + fmt(r[0]) + ", " + fmt(r[1]) + ")");
    }

    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 12;
        Matrix a(d, d);
        Eigen::MatrixXd e(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                const double v = u(rng);
                a(i, j) = a(j, i) = v;
                e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
        }
        const auto mine = jacobi_eigen(a);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e);
        double worst = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const auto ek = static_cast<Eigen::Index>(d - 1 - k);
            worst = std::max(worst, std::fabs(mine.values[k] - solver.eigenvalues()(ek)));
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                dot += mine.vectors(i, k) * solver.eigenvectors()(static_cast<Eigen::Index>(i), ek);
            }
            worst = std::max(worst, std::fabs(std::fabs(dot) - 1.0));
        }
        c.expect(worst <= 1e-8, "eigen oracle " + std::to_string(d) + "x" + std::to_string(d) + " error " + fmt(worst));
    }
}

// ---------------------------------------------------------------------------

void classifier_checks(Checks& c) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> norm(0.0, 1.0);
    const double h = 1e-5;
    for (int problem = 0; problem < 20; ++problem) {
        const std::size_t d = 1 + rng() % 5;
        const std::size_t k = 2 + rng() % 2;
        const std::size_t n = 2 + rng() % 19;
        Matrix x(n, d), w(d + 1, k);
        for (auto& v : x.data) v = norm(rng);
        for (auto& v : w.data) v = 0.5 * norm(rng);
        std::vector<std::size_t> t(n);
        for (auto& v : t) v = rng() % k;
        const double l2 = 0.1 * (problem % 3);
        const auto g = loss_and_gradient(w, x, t, l2).gradient;
        double worst = 0.0;
        for (std::size_t i = 0; i < w.data.size(); ++i) {
            const double keep = w.data[i];
            w.data[i] = keep + h;
            const double up = loss_and_gradient(w, x, t, l2).loss;
            w.data[i] = keep - h;
            const double down = loss_and_gradient(w, x, t, l2).loss;
            w.data[i] = keep;
            const double fd = (up - down) / (2.0 * h);
            worst = std::max(worst, std::fabs(g.data[i] - fd) / std::max({std::fabs(g.data[i]), std::fabs(fd), 1e-3}));
        }
        c.expect(worst <= 1e-6, "gradient problem " + std::to_string(problem) + " relative error " + fmt(worst));
    }

    auto blobs = [&](std::size_t per_class, Matrix& x, std::vector<std::string>& y) {
        std::normal_distribution<double> spread(0.0, 0.6);
        x = Matrix(2 * per_class, 3);
        y.assign(2 * per_class, "");
        for (std::size_t i = 0; i < 2 * per_class; ++i) {
            const bool b = i % 2 == 1;
            for (std::size_t col = 0; col < 3; ++col) x(i, col) = spread(rng) + (b ? 2.5 : -2.5);
            y[i] = b ? "b" : "a";
        }
    };
    Matrix xtr, xte;
    std::vector<std::string> ytr, yte;
    blobs(200, xtr, ytr);
    blobs(200, xte, yte);
    const auto model = train(xtr, ytr, TrainConfig{});
    const double acc = evaluate(model, xte, yte).accuracy;
    c.expect(acc >= 0.99, "blob accuracy " + fmt(acc));

    std::uniform_real_distribution<double> u(-30.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> z(2 + rng() % 6);
        for (auto& v : z) v = u(rng);
        const auto p = softmax(z);
        worst = std::max(worst, std::fabs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
    }
    c.expect(worst <= 1e-12, "softmax sum error " + fmt(worst));

    // Noisy classes so training runs for many epochs.
    for (auto& v : xtr.data) v += 3.0 * norm(rng);
    TrainConfig cfg;
    cfg.max_epochs = 500;
    const auto a = train(xtr, ytr, cfg);
    const auto b = train(xtr, ytr, cfg);
    c.expect(a.weights.data == b.weights.data, "two training runs differ");
}

// ---------------------------------------------------------------------------

double feature(const FeatureRegistry& reg, const FeatureVector& fv, std::string_view id, bool& present) {
    const auto i = reg.index_of(id);
    present = i.has_value() && !fv.missing[*i];
    return present ? fv.values[*i] : 0.0;
}

void feature_golden(Checks& c) {
    const auto reg = build_registry(kCatalogVersion, ResourceSet{});
    const std::string raw(fixtures::kGoldenText);
    const auto fv = extract_all(annotate_text("g", raw), raw, reg, {});
    for (const auto& [id, expected] : fixtures::golden_values()) {
        bool present = false;
        const double got = feature(reg, fv, id, present);
        c.expect(present && std::fabs(got - expected) <= 1e-9,
                 std::string(id) + " = " + fmt(got) + ", want " + fmt(expected));
    }

    auto single = [&](const std::string& text, std::string_view id) {
        const auto v = extract_all(annotate_text("s", text), text, reg, {});
        bool present = false;
        const double got = feature(reg, v, id, present);
        return present ? got : NAN;
    };
    const double cli = single("The cat sat.", "coleman_liau_index");
    c.expect(std::fabs(cli - (-8.0267)) <= 1e-4 && std::fabs(cli - (0.0588 * 300 - 0.296 * 100 / 3.0 - 15.8)) <= 1e-9,
             "coleman_liau_index = " + fmt(cli));
    const double ttr = single("a a b", "simple_type_token_ratio");
    c.expect(std::fabs(ttr - 2.0 / 3.0) <= 1e-12, "simple_type_token_ratio = " + fmt(ttr));

    std::mt19937_64 rng(4);
    WordNormLexicon zipf(NormKind::zipf), aoa(NormKind::age_of_acquisition);
    std::uniform_real_distribution<double> u(1.0, 7.0);
    for (const char* w : fixtures::kWords) {
        zipf.set(w, u(rng));
        aoa.set(w, 2.0 * u(rng));
    }
    const auto emo = fixtures::random_emotion_lexicon(rng);
    ExtractionResources res;
    res.zipf = &zipf;
    res.aoa = &aoa;
    res.emotion = &emo;
    const auto full = build_registry(kCatalogVersion, ResourceSet::all());
    const auto ids = full.ids();
    for (int trial = 0; trial < 50; ++trial) {
        const std::string doc = fixtures::random_doc(rng);
        const std::string twice = doc + doc;
        const auto a = extract_all(annotate_text("a", doc), doc, full, res);
        const auto b = extract_all(annotate_text("b", twice), twice, full, res);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i].rfind("total_", 0) != 0 || ids[i].find("_unique_") != std::string::npos) continue;
            const bool ok = !a.missing[i] && !b.missing[i] &&
                            std::fabs(b.values[i] - 2.0 * a.values[i]) <= 1e-12 * std::max(1.0, std::fabs(a.values[i]));
            c.expect(ok, "doubling " + ids[i] + " on doc " + std::to_string(trial));
        }
    }
}

// ---------------------------------------------------------------------------

void semantic_emotion(Checks& c) {
    const auto doc = annotate_text("d", "The cat sat. The cat sat. The cat sat.");
    std::vector<std::vector<std::string>> sents;
    for (const auto& s : doc.sentences) sents.push_back(sentence_terms(s));
    const auto model = fit_tfidf(sents);
    std::vector<SentenceVector> vs;
    for (const auto& s : sents) vs.push_back(vectorize(model, s));
    const auto same = doc_semantic_consistency(vs);
    c.expect(same && std::fabs(*same - 1.0) <= 1e-12, "identical sentences consistency");

    const auto ext = parse_external_vectors("{\"id\":\"o\",\"vectors\":[[1,0,0],[0,2,0],[0,0,3]]}\n");
    const auto ortho = doc_semantic_consistency(ext.at("o"));
    c.expect(ortho && *ortho == 0.0, "orthogonal vectors consistency");

    std::mt19937_64 rng(5);
    std::normal_distribution<double> norm(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        std::vector<std::vector<double>> raw(n, std::vector<double>(5));
        std::vector<SentenceVector> svs;
        for (auto& r : raw) {
            for (auto& x : r) x = norm(rng);
            svs.push_back(SentenceVector::dense(r));
        }
        double sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double d = 0, a = 0, b = 0;
                for (std::size_t k = 0; k < 5; ++k) {
                    d += raw[i][k] * raw[j][k];
                    a += raw[i][k] * raw[i][k];
                    b += raw[j][k] * raw[j][k];
                }
                sum += std::clamp(d / (std::sqrt(a) * std::sqrt(b)), -1.0, 1.0);
                ++pairs;
            }
        }
        const auto got = doc_semantic_consistency(svs);
        c.expect(got && std::fabs(*got - sum / static_cast<double>(pairs)) <= 1e-12,
                 "pair mean trial " + std::to_string(trial));
    }

    for (int trial = 0; trial < 200; ++trial) {
        const auto lex = fixtures::random_emotion_lexicon(rng);
        const std::string text = fixtures::random_doc(rng);
        const auto v = extract_emotion(annotate_text("e", text), lex);
        // Intensities: per-word averages and the three aggregate scores.
        for (const auto& [id, value] : v) {
            const bool intensity = id.ends_with("_intensity_per_word") || id == "average_emotion" ||
                                   id == "negative_emotion" || id == "positive_emotion";
            if (!intensity || !value) continue;
            c.expect(*value >= 0.0 && *value <= 1.0, id + " = " + fmt(*value));
        }
    }
}

// ---------------------------------------------------------------------------

std::string lower(std::string s) { return ascii_lower(s); }

const char* env(const char* name) {
    const char* v = std::getenv(name);
    return (v && *v) ? v : nullptr;
}

// Deterministic stratified subsample: within each label, keep the documents
// with the smallest id hashes.
Corpus subsample(const Corpus& corpus, double fraction) {
    if (fraction >= 1.0) return corpus;
    std::map<std::string, std::vector<std::pair<std::uint64_t, std::size_t>>> by_label;
    const auto& recs = corpus.records();
    for (std::size_t i = 0; i < recs.size(); ++i) by_label[recs[i].author_label].push_back({fnv1a(recs[i].id), i});
    std::vector<std::size_t> keep;
    for (auto& [label, members] : by_label) {
        std::sort(members.begin(), members.end());
        const auto n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(members.size())));
        for (std::size_t j = 0; j < n && j < members.size(); ++j) keep.push_back(members[j].second);
    }
    std::sort(keep.begin(), keep.end());
    std::vector<DocumentRecord> out;
    for (auto i : keep) out.push_back(recs[i]);
    return Corpus(std::move(out));
}

void dataset_checks(Checks& c, const std::string& path) {
    const double fraction = env("STYLO_M4_FRACTION") ? std::stod(env("STYLO_M4_FRACTION")) : 0.1;
    const std::size_t per_class = env("STYLO_M4_TEST_PER_CLASS") ? std::stoul(env("STYLO_M4_TEST_PER_CLASS")) : 500;

    const auto loaded = load_corpus(path, CorpusFormat::jsonl);
    const Corpus corpus = subsample(loaded.corpus, fraction);
    ExtractInputs inputs;
    if (env("STYLO_M4_EMOTION")) inputs.emotion = load_emotion_lexicon(env("STYLO_M4_EMOTION"));
    if (env("STYLO_M4_VECTORS")) inputs.vectors = load_external_vectors(env("STYLO_M4_VECTORS"));
    const auto registry = build_registry(kCatalogVersion, resources_of(inputs));
    const auto threads = std::max(1u, std::thread::hardware_concurrency());
    const FeatureDataset data = extract_corpus(corpus, inputs, registry, threads);

    auto column = [&](std::string_view id) -> std::optional<std::size_t> {
        const auto& ids = data.table.feature_ids;
        const auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end()) return std::nullopt;
        return static_cast<std::size_t>(it - ids.begin());
    };

    // (a) words per document.
    {
        const auto col = column(feature_ids::kWords);
        std::map<std::string, std::pair<double, std::size_t>> sums;
        for (std::size_t r = 0; r < data.size(); ++r) {
            if (!col || data.table.is_missing(r, *col)) continue;
            auto& s = sums[data.labels[r]];
            s.first += data.table.values(r, *col);
            s.second += 1;
        }
        const auto human = sums.find("human");
        const bool have = human != sums.end() && human->second.second > 0;
        const double hm = have ? human->second.first / static_cast<double>(human->second.second) : 0.0;
        c.expect(have && std::fabs(hm - 706.16) <= 0.10 * 706.16, "(a) human mean words " + fmt(hm));
        for (const auto& [label, s] : sums) {
            if (label == "human") continue;
            const double m = s.first / static_cast<double>(s.second);
            c.expect(hm > m, "(a) human mean " + fmt(hm) + " vs " + label + " " + fmt(m));
        }
    }

    // (b) Kruskal-Wallis on the headline features.
    for (auto id : {feature_ids::kSemanticConsistency, feature_ids::kUniqueWords, feature_ids::kSyntacticDepth,
                     feature_ids::kAverageEmotion}) {
        if (!column(id)) {
            c.expect(false, "(b) " + std::string(id) + " not extracted (resource missing)");
            continue;
        }
        const auto st = run_stats(data, GroupBy::author_label, {std::string(id)}, PAdjustment::bonferroni);
        const bool ok = !st.empty() && st[0].kw && st[0].kw->p_value < 0.001;
        c.expect(ok, "(b) " + std::string(id) + " p = " + (st.empty() || !st[0].kw ? "n/a" : fmt(st[0].kw->p_value)));
    }

    // (c) PCA variability ordering.
    {
        const auto pca = run_pca(data);
        std::map<std::string, std::map<std::string, double>> by_domain;  // domain -> label -> variability
        for (const auto& g : pca.variability) by_domain[lower(g.key.domain)][g.key.label] = g.variability;
        for (const char* dom : {"wikihow", "wikipedia", "reddit"}) {
            const auto it = by_domain.find(dom);
            bool ok = it != by_domain.end() && it->second.count("human");
            if (ok) {
                for (const auto& [label, v] : it->second) {
                    if (label != "human" && !(it->second.at("human") > v)) ok = false;
                }
            }
            c.expect(ok, std::string("(c) human variability not greatest in ") + dom);
        }
        const auto arxiv = by_domain.find("arxiv");
        bool compressed = arxiv != by_domain.end() && arxiv->second.count("human");
        if (compressed) {
            const double a = arxiv->second.at("human");
            for (const auto& [dom, labels] : by_domain) {
                if (dom != "arxiv" && labels.count("human") && !(a < labels.at("human"))) compressed = false;
            }
        }
        c.expect(compressed, "(c) human arXiv spread not below the other domains");
    }

    // (d) and (e) classifier.
    {
        const auto run = run_classify(data, SplitSpec{per_class, 0}, TrainConfig{});
        c.expect(run.metrics.accuracy >= 0.80, "(d) accuracy " + fmt(run.metrics.accuracy));
        std::vector<std::pair<double, std::string>> f1;
        for (const auto& m : run.metrics.per_class) f1.push_back({m.f1, m.label});
        std::sort(f1.rbegin(), f1.rend());
        const bool top_two = (f1.size() > 0 && f1[0].second == "human") || (f1.size() > 1 && f1[1].second == "human");
        c.expect(top_two, "(d) human F1 outside the top two");
        bool found = false;
        for (const auto& [id, w] : top_features(run.model, "human", 10)) found = found || id == feature_ids::kUniqueWords;
        c.expect(found, "(e) total_number_of_unique_words not in the human top 10");
    }
}

// ---------------------------------------------------------------------------

struct Criterion {
    const char* name;
    void (*run)(Checks&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"statistical oracles", statistical_oracles},
        {"pca analytic check", pca_analytic},
        {"classifier checks", classifier_checks},
        {"feature golden suite", feature_golden},
        {"semantic and emotion properties", semantic_emotion},
    };
    int failures = 0;
    for (const auto& crit : criteria) {
        Checks c;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s (%s, %.2fs)\n", c.ok() ? "PASS" : "FAIL", crit.name, c.summary().c_str(), secs);
        if (!c.ok()) ++failures;
    }

    const char* m4 = env("STYLO_M4_PATH");
    if (!m4) {
        std::printf("SKIP dataset reproduction (STYLO_M4_PATH not set)\n");
    } else {
        Checks c;
        const auto start = std::chrono::steady_clock::now();
        try {
            dataset_checks(c, m4);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s dataset reproduction (%s, %.2fs)\n", c.ok() ? "PASS" : "FAIL", c.summary().c_str(), secs);
        if (!c.ok()) ++failures;
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
