#include "stylo/features.hpp"

#include "stylo/error.hpp"
#include "stylo/util.hpp"
#include "wordlists.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace stylo {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::surface: return "surface";
        case Family::lexical_diversity: return "lexical_diversity";
        case Family::pos: return "pos";
        case Family::readability: return "readability";
        case Family::lexicon: return "lexicon";
        case Family::entity: return "entity";
        case Family::emotion: return "emotion";
        case Family::syntax: return "syntax";
        case Family::semantics: return "semantics";
    }
    return "unknown";
}

bool ResourceSet::has(Resource r) const {
    switch (r) {
        case Resource::zipf_lexicon: return zipf_lexicon;
        case Resource::aoa_lexicon: return aoa_lexicon;
        case Resource::emotion_lexicon: return emotion_lexicon;
        case Resource::dependencies: return dependencies;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

struct PosClass {
    Upos tag;
    std::string_view name;
};

constexpr std::array<PosClass, 15> kPosClasses = {{
    {Upos::NOUN, "nouns"},
    {Upos::VERB, "verbs"},
    {Upos::ADJ, "adjectives"},
    {Upos::ADV, "adverbs"},
    {Upos::PRON, "pronouns"},
    {Upos::PROPN, "proper_nouns"},
    {Upos::DET, "determiners"},
    {Upos::ADP, "adpositions"},
    {Upos::SCONJ, "subordinating_conjunctions"},
    {Upos::CCONJ, "coordinating_conjunctions"},
    {Upos::AUX, "auxiliaries"},
    {Upos::INTJ, "interjections"},
    {Upos::NUM, "numerals"},
    {Upos::PUNCT, "punctuations"},
    {Upos::SPACE, "spaces"},
}};

constexpr std::array<std::string_view, 23> kSurfaceIds = {
    "total_number_of_words",
    "total_number_of_unique_words",
    "total_number_of_sentences",
    "total_number_of_characters",
    "total_number_of_letters",
    "total_number_of_syllables",
    "total_number_of_stop_words",
    "total_number_of_unique_stop_words",
    "total_number_of_long_words",
    "total_number_of_complex_words",
    "total_number_of_monosyllabic_words",
    "total_number_of_capitalized_words",
    "average_number_of_characters_per_word",
    "average_number_of_letters_per_word",
    "average_number_of_syllables_per_word",
    "average_number_of_words_per_sentence",
    "average_number_of_characters_per_sentence",
    "average_number_of_syllables_per_sentence",
    "average_number_of_stop_words_per_word",
    "average_number_of_stop_words_per_sentence",
    "average_number_of_long_words_per_word",
    "average_number_of_complex_words_per_word",
    "average_number_of_monosyllabic_words_per_word",
};

constexpr std::array<std::string_view, 6> kDiversityBases = {
    "simple_type_token_ratio", "root_type_token_ratio",  "corrected_type_token_ratio",
    "bilogarithmic_type_token_ratio", "uber_type_token_ratio", "maas_type_token_ratio"};

constexpr std::array<std::string_view, 8> kReadabilityIds = {
    "coleman_liau_index", "flesch_reading_ease", "flesch_kincaid_grade_level",
    "automated_readability_index", "gunning_fog_index", "smog_index", "lix_index", "rix_index"};

constexpr std::array<std::string_view, 4> kZipfIds = {
    "total_subtlex_us_zipf_of_words", "average_subtlex_us_zipf_of_words_per_word",
    "average_subtlex_us_zipf_of_words_per_sentence", "subtlex_us_zipf_coverage"};

constexpr std::array<std::string_view, 4> kAoaIds = {
    "total_brysbaert_age_of_acquistion_of_words",
    "average_brysbaert_age_of_acquistion_of_words_per_word",
    "average_brysbaert_age_of_acquistion_of_words_per_sentence",
    "brysbaert_age_of_acquistion_coverage"};

constexpr std::string_view kDateId = "total_number_of_named_entities_date";
constexpr std::string_view kCardinalId = "total_number_of_named_entities_cardinal";

std::string s(std::string_view v) { return std::string(v); }

std::vector<FeatureSpec> catalog_v1() {
    std::vector<FeatureSpec> c;
    for (auto id : kSurfaceIds) c.push_back({s(id), Family::surface, {}});
    for (auto base : kDiversityBases) {
        c.push_back({s(base), Family::lexical_diversity, {}});
        c.push_back({s(base) + "_no_lemma", Family::lexical_diversity, {}});
    }
    for (const auto& p : kPosClasses) {
        const std::string n(p.name);
        c.push_back({"total_number_of_" + n, Family::pos, {}});
        c.push_back({"total_number_of_unique_" + n, Family::pos, {}});
        c.push_back({"average_number_of_" + n + "_per_word", Family::pos, {}});
        c.push_back({"average_number_of_" + n + "_per_sentence", Family::pos, {}});
        c.push_back({"simple_" + n + "_variation", Family::pos, {}});
        c.push_back({"root_" + n + "_variation", Family::pos, {}});
        c.push_back({"corrected_" + n + "_variation", Family::pos, {}});
    }
    for (auto id : kReadabilityIds) c.push_back({s(id), Family::readability, {}});
    for (auto id : kZipfIds) c.push_back({s(id), Family::lexicon, {Resource::zipf_lexicon}});
    for (auto id : kAoaIds) c.push_back({s(id), Family::lexicon, {Resource::aoa_lexicon}});
    c.push_back({s(kDateId), Family::entity, {}});
    c.push_back({s(kCardinalId), Family::entity, {}});
    for (auto e : kEmotions) {
        const std::string n(e);
        c.push_back({"total_" + n + "_intensity", Family::emotion, {Resource::emotion_lexicon}});
        c.push_back({"average_" + n + "_intensity_per_word", Family::emotion, {Resource::emotion_lexicon}});
        c.push_back({"average_" + n + "_intensity_per_sentence", Family::emotion, {Resource::emotion_lexicon}});
        c.push_back({"total_number_of_" + n + "_words", Family::emotion, {Resource::emotion_lexicon}});
    }
    c.push_back({s(feature_ids::kAverageEmotion), Family::emotion, {Resource::emotion_lexicon}});
    c.push_back({"negative_emotion", Family::emotion, {Resource::emotion_lexicon}});
    c.push_back({"positive_emotion", Family::emotion, {Resource::emotion_lexicon}});
    c.push_back({s(feature_ids::kSyntacticDepth), Family::syntax, {Resource::dependencies}});
    c.push_back({s(feature_ids::kSemanticConsistency), Family::semantics, {}});
    return c;
}

}  // namespace

FeatureRegistry::FeatureRegistry(std::string catalog_version, std::vector<FeatureSpec> specs,
                                 std::uint64_t resource_fingerprint)
    : version_(std::move(catalog_version)),
      specs_(std::move(specs)),
      resource_fingerprint_(resource_fingerprint) {
    std::uint64_t h = fnv1a(version_);
    h = fnv1a(hex64(resource_fingerprint_), h);
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        if (!index_.emplace(specs_[i].id, i).second) {
            throw InputError("duplicate feature id in catalog: " + specs_[i].id);
        }
        h = fnv1a(specs_[i].id + "\n", h);
    }
    fingerprint_ = h;
}

std::optional<std::size_t> FeatureRegistry::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> FeatureRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(specs_.size());
    for (const auto& sp : specs_) out.push_back(sp.id);
    return out;
}

FeatureRegistry build_registry(std::string_view catalog_version, const ResourceSet& resources,
                               std::uint64_t resource_fingerprint) {
    if (catalog_version != kCatalogVersion) {
        throw InputError("unknown feature catalog version \"" + std::string(catalog_version) + "\"");
    }
    std::vector<FeatureSpec> kept;
    for (auto& spec : catalog_v1()) {
        const bool ok = std::all_of(spec.needs.begin(), spec.needs.end(),
                                    [&](Resource r) { return resources.has(r); });
        if (ok) kept.push_back(std::move(spec));
    }
    return FeatureRegistry(std::string(catalog_version), std::move(kept), resource_fingerprint);
}

std::uint64_t feature_list_fingerprint(const std::vector<std::string>& ids) {
    std::uint64_t h = fnv1a("feature-list");
    for (const auto& id : ids) h = fnv1a(id + "\n", h);
    return h;
}

// ---------------------------------------------------------------------------
// Lexicons

std::optional<std::size_t> emotion_index(std::string_view name) {
    for (std::size_t i = 0; i < kEmotions.size(); ++i) {
        if (kEmotions[i] == name) return i;
    }
    return std::nullopt;
}

void EmotionLexicon::set(std::string_view word, std::string_view emotion, double intensity) {
    const auto idx = emotion_index(emotion);
    if (!idx) throw InputError("unknown emotion \"" + std::string(emotion) + "\"");
    if (!(intensity >= 0.0 && intensity <= 1.0)) {
        throw InputError("emotion intensity out of [0,1] for \"" + std::string(word) + "\"");
    }
    auto [it, inserted] = entries_.try_emplace(ascii_lower(word));
    if (inserted) it->second.fill(0.0);
    it->second[*idx] = intensity;
}

const EmotionLexicon::Intensities* EmotionLexicon::find(std::string_view lower_word) const {
    auto it = entries_.find(std::string(lower_word));
    return it == entries_.end() ? nullptr : &it->second;
}

namespace {

template <typename Fn>
void for_each_tsv_row(std::string_view data, std::size_t expected_cols, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first_data = true;
    while (pos < data.size()) {
        auto end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        std::string_view line = data.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty() || line.front() == '#') continue;

        std::vector<std::string_view> cols;
        std::size_t p = 0;
        while (true) {
            const auto tab = line.find('\t', p);
            cols.push_back(line.substr(p, tab == std::string_view::npos ? std::string_view::npos : tab - p));
            if (tab == std::string_view::npos) break;
            p = tab + 1;
        }
        if (cols.size() != expected_cols) {
            throw ParseError("expected " + std::to_string(expected_cols) + " tab-separated columns",
                             line_no);
        }
        const auto value = parse_double(cols.back());
        if (!value) {
            if (first_data) {  // header row
                first_data = false;
                continue;
            }
            throw ParseError("non-numeric value \"" + std::string(cols.back()) + "\"", line_no);
        }
        first_data = false;
        try {
            fn(cols, *value);
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
}

}  // namespace

EmotionLexicon parse_emotion_lexicon(std::string_view data) {
    EmotionLexicon lex;
    for_each_tsv_row(data, 3, [&](const std::vector<std::string_view>& cols, double v) {
        lex.set(trim(cols[0]), trim(cols[1]), v);
    });
    return lex;
}

EmotionLexicon load_emotion_lexicon(const std::string& path) {
    return parse_emotion_lexicon(read_file(path));
}

void WordNormLexicon::set(std::string_view word, double value) {
    const double hi = kind_ == NormKind::zipf ? 8.0 : 30.0;
    if (!(value >= 0.0 && value <= hi)) {
        throw InputError("norm value out of range for \"" + std::string(word) + "\"");
    }
    entries_[ascii_lower(word)] = value;
}

std::optional<double> WordNormLexicon::find(std::string_view lower_word) const {
    auto it = entries_.find(std::string(lower_word));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

WordNormLexicon parse_word_norms(std::string_view data, NormKind kind) {
    WordNormLexicon lex(kind);
    for_each_tsv_row(data, 2, [&](const std::vector<std::string_view>& cols, double v) {
        lex.set(trim(cols[0]), v);
    });
    return lex;
}

WordNormLexicon load_word_norms(const std::string& path, NormKind kind) {
    return parse_word_norms(read_file(path), kind);
}

// ---------------------------------------------------------------------------
// Extraction helpers

namespace {

bool is_word(const Token& t) { return t.upos != Upos::PUNCT && t.upos != Upos::SPACE; }

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

double d(std::size_t v) { return static_cast<double>(v); }

struct DocCounts {
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::size_t characters = 0;  // non-whitespace code points over all tokens
    std::size_t letters = 0;     // letter code points in word tokens
    std::size_t syllables = 0;
    std::size_t stop_words = 0;
    std::size_t long_words = 0;  // more than 6 letters
    std::size_t complex_words = 0;  // 3+ syllables
    std::size_t monosyllabic = 0;
    std::size_t capitalized = 0;
    std::unordered_set<std::string> unique_words;
    std::unordered_set<std::string> unique_stop_words;
};

DocCounts count_doc(const AnnotatedDoc& doc) {
    DocCounts c;
    c.sentences = doc.sentences.size();
    for (const auto& sent : doc.sentences) {
        for (const auto& t : sent.tokens) {
            std::size_t cps = 0;
            std::size_t letters = 0;
            for (std::size_t i = 0; i < t.surface.size();) {
                const CodePoint cp = decode_utf8(t.surface, i);
                if (!is_unicode_space(cp.value)) ++cps;
                if (is_letter(cp.value)) ++letters;
                i += cp.length;
            }
            c.characters += cps;
            if (!is_word(t)) continue;
            ++c.words;
            c.letters += letters;
            c.syllables += static_cast<std::size_t>(t.syllables);
            c.unique_words.insert(t.lower);
            if (t.is_stopword) {
                ++c.stop_words;
                c.unique_stop_words.insert(t.lower);
            }
            if (letters > 6) ++c.long_words;
            if (t.syllables >= 3) ++c.complex_words;
            if (t.syllables == 1) ++c.monosyllabic;
            if (!t.surface.empty() && t.surface[0] >= 'A' && t.surface[0] <= 'Z') ++c.capitalized;
        }
    }
    return c;
}

}  // namespace

FeatureValues extract_surface(const AnnotatedDoc& doc, std::string_view /*raw_text*/) {
    const DocCounts c = count_doc(doc);
    const double W = d(c.words);
    const double S = d(c.sentences);
    FeatureValues v;
    v["total_number_of_words"] = W;
    v["total_number_of_unique_words"] = d(c.unique_words.size());
    v["total_number_of_sentences"] = S;
    v["total_number_of_characters"] = d(c.characters);
    v["total_number_of_letters"] = d(c.letters);
    v["total_number_of_syllables"] = d(c.syllables);
    v["total_number_of_stop_words"] = d(c.stop_words);
    v["total_number_of_unique_stop_words"] = d(c.unique_stop_words.size());
    v["total_number_of_long_words"] = d(c.long_words);
    v["total_number_of_complex_words"] = d(c.complex_words);
    v["total_number_of_monosyllabic_words"] = d(c.monosyllabic);
    v["total_number_of_capitalized_words"] = d(c.capitalized);
    v["average_number_of_characters_per_word"] = ratio(d(c.characters), W);
    v["average_number_of_letters_per_word"] = ratio(d(c.letters), W);
    v["average_number_of_syllables_per_word"] = ratio(d(c.syllables), W);
    v["average_number_of_words_per_sentence"] = ratio(W, S);
    v["average_number_of_characters_per_sentence"] = ratio(d(c.characters), S);
    v["average_number_of_syllables_per_sentence"] = ratio(d(c.syllables), S);
    v["average_number_of_stop_words_per_word"] = ratio(d(c.stop_words), W);
    v["average_number_of_stop_words_per_sentence"] = ratio(d(c.stop_words), S);
    v["average_number_of_long_words_per_word"] = ratio(d(c.long_words), W);
    v["average_number_of_complex_words_per_word"] = ratio(d(c.complex_words), W);
    v["average_number_of_monosyllabic_words_per_word"] = ratio(d(c.monosyllabic), W);
    return v;
}

FeatureValues extract_diversity(const AnnotatedDoc& doc) {
    std::size_t total = 0;
    std::unordered_set<std::string> unique;
    for (const auto& sent : doc.sentences) {
        for (const auto& t : sent.tokens) {
            if (!is_word(t)) continue;
            ++total;
            unique.insert(t.lower);
        }
    }
    FeatureValues v;
    const double T = d(total);
    const double U = d(unique.size());
    std::optional<double> simple, root, corrected, bilog, uber, maas;
    if (total > 0) {
        simple = U / T;
        root = U / std::sqrt(T);
        corrected = U / std::sqrt(2.0 * T);
        bilog = total == 1 ? 1.0 : std::log(U) / std::log(T);
        if (U < T) uber = std::pow(std::log(T), 2.0) / (std::log(T) - std::log(U));
        if (total > 1) maas = (std::log(T) - std::log(U)) / std::pow(std::log(T), 2.0);
    }
    auto put = [&](std::string_view base, std::optional<double> x) {
        v[std::string(base)] = x;
        v[std::string(base) + "_no_lemma"] = x;
    };
    put(kDiversityBases[0], simple);
    put(kDiversityBases[1], root);
    put(kDiversityBases[2], corrected);
    put(kDiversityBases[3], bilog);
    put(kDiversityBases[4], uber);
    put(kDiversityBases[5], maas);
    return v;
}

FeatureValues extract_pos_features(const AnnotatedDoc& doc, std::string_view raw_text) {
    std::array<std::size_t, kUposCount> count{};
    std::array<std::unordered_set<std::string>, kUposCount> unique;
    std::size_t words = 0;
    for (const auto& sent : doc.sentences) {
        for (const auto& t : sent.tokens) {
            if (t.upos == Upos::SPACE) continue;  // SPACE comes from the raw text below
            const auto k = static_cast<std::size_t>(t.upos);
            ++count[k];
            unique[k].insert(t.lower);
            if (is_word(t)) ++words;
        }
    }
    const auto space = static_cast<std::size_t>(Upos::SPACE);
    for (std::size_t i = 0; i < raw_text.size();) {
        const CodePoint cp = decode_utf8(raw_text, i);
        if (is_unicode_space(cp.value)) {
            ++count[space];
            unique[space].insert(std::string(raw_text.substr(i, cp.length)));
        }
        i += cp.length;
    }

    const double W = d(words);
    const double S = d(doc.sentences.size());
    FeatureValues v;
    for (const auto& p : kPosClasses) {
        const std::string n(p.name);
        const auto k = static_cast<std::size_t>(p.tag);
        const double nP = d(count[k]);
        const double uP = d(unique[k].size());
        v["total_number_of_" + n] = nP;
        v["total_number_of_unique_" + n] = uP;
        v["average_number_of_" + n + "_per_word"] = ratio(nP, W);
        v["average_number_of_" + n + "_per_sentence"] = ratio(nP, S);
        v["simple_" + n + "_variation"] = nP == 0 ? 0.0 : uP / nP;
        v["root_" + n + "_variation"] = nP == 0 ? 0.0 : uP / std::sqrt(nP);
        v["corrected_" + n + "_variation"] = nP == 0 ? 0.0 : uP / std::sqrt(2.0 * nP);
    }
    return v;
}

FeatureValues extract_readability(const AnnotatedDoc& doc) {
    const DocCounts c = count_doc(doc);
    FeatureValues v;
    if (c.words == 0 || c.sentences == 0) {
        for (auto id : kReadabilityIds) v[std::string(id)] = std::nullopt;
        return v;
    }
    const double W = d(c.words);
    const double S = d(c.sentences);
    const double L = d(c.letters);
    const double Y = d(c.syllables);
    const double C = d(c.complex_words);
    const double LW = d(c.long_words);
    v["coleman_liau_index"] = 0.0588 * (100.0 * L / W) - 0.296 * (100.0 * S / W) - 15.8;
    v["flesch_reading_ease"] = 206.835 - 1.015 * (W / S) - 84.6 * (Y / W);
    v["flesch_kincaid_grade_level"] = 0.39 * (W / S) + 11.8 * (Y / W) - 15.59;
    v["automated_readability_index"] = 4.71 * (L / W) + 0.5 * (W / S) - 21.43;
    v["gunning_fog_index"] = 0.4 * ((W / S) + 100.0 * (C / W));
    v["smog_index"] = 1.0430 * std::sqrt(C * 30.0 / S) + 3.1291;
    v["lix_index"] = W / S + 100.0 * LW / W;
    v["rix_index"] = LW / S;
    return v;
}

FeatureValues extract_lexicon_features(const AnnotatedDoc& doc, const WordNormLexicon* zipf,
                                       const WordNormLexicon* aoa) {
    FeatureValues v;
    const double S = d(doc.sentences.size());
    auto run = [&](const WordNormLexicon& lex, const std::array<std::string_view, 4>& ids) {
        double sum = 0.0;
        std::size_t hits = 0;
        std::size_t words = 0;
        for (const auto& sent : doc.sentences) {
            for (const auto& t : sent.tokens) {
                if (!is_word(t)) continue;
                ++words;
                if (auto x = lex.find(t.lower)) {
                    sum += *x;
                    ++hits;
                }
            }
        }
        v[std::string(ids[0])] = sum;
        v[std::string(ids[1])] = hits ? ratio(sum, d(hits)) : std::nullopt;
        v[std::string(ids[2])] = hits ? ratio(sum, S) : std::nullopt;
        v[std::string(ids[3])] = ratio(d(hits), d(words));
    };
    if (zipf) run(*zipf, kZipfIds);
    if (aoa) run(*aoa, kAoaIds);
    return v;
}

// ---------------------------------------------------------------------------
// Entities

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

bool is_day(std::string_view s) {
    std::string_view digits = s;
    for (std::string_view suf : {"st", "nd", "rd", "th"}) {
        if (s.size() > suf.size() && s.substr(s.size() - suf.size()) == suf) {
            digits = s.substr(0, s.size() - suf.size());
            break;
        }
    }
    if (digits.size() > 2 || !all_digits(digits)) return false;
    const int v = to_int(digits);
    return v >= 1 && v <= 31;
}

bool is_year4(std::string_view s) { return s.size() == 4 && all_digits(s); }

bool is_month(const Token& t) {
    return !t.surface.empty() && t.surface[0] >= 'A' && t.surface[0] <= 'Z' &&
           wordlists::month_names().count(t.lower) > 0;
}

}  // namespace

EntityCounts extract_entity_regex(std::string_view raw_text) {
    const std::vector<Token> toks = tokenize(raw_text);
    const std::size_t n = toks.size();
    auto adjacent = [&](std::size_t a, std::size_t b) { return toks[a].char_end == toks[b].char_start; };
    auto is = [&](std::size_t i, std::string_view s) { return i < n && toks[i].surface == s; };

    EntityCounts out;
    std::size_t i = 0;
    while (i < n) {
        const Token& t = toks[i];
        // ISO date
        if (is_year4(t.surface) && i + 4 < n && is(i + 1, "-") && is(i + 3, "-") &&
            toks[i + 2].surface.size() == 2 && all_digits(toks[i + 2].surface) &&
            toks[i + 4].surface.size() == 2 && all_digits(toks[i + 4].surface) && adjacent(i, i + 1) &&
            adjacent(i + 1, i + 2) && adjacent(i + 2, i + 3) && adjacent(i + 3, i + 4)) {
            const int m = to_int(toks[i + 2].surface);
            const int dd = to_int(toks[i + 4].surface);
            if (m >= 1 && m <= 12 && dd >= 1 && dd <= 31) {
                ++out.dates;
                i += 5;
                continue;
            }
        }
        // Month [day] [,] [year]
        if (is_month(t)) {
            std::size_t j = i + 1;
            if (t.lower.size() <= 4 && is(j, ".") && adjacent(i, j)) ++j;
            bool extra = false;
            if (j < n && is_day(toks[j].surface)) {
                ++j;
                extra = true;
                if (is(j, ",")) ++j;
            }
            if (j < n && is_year4(toks[j].surface)) {
                ++j;
                extra = true;
            } else if (extra && is(j - 1, ",")) {
                --j;  // leave a trailing comma alone
            }
            if (t.lower != "may" || extra) {
                ++out.dates;
                i = j;
                continue;
            }
        }
        // Day Month [year]
        if (is_day(t.surface) && i + 1 < n && is_month(toks[i + 1])) {
            std::size_t j = i + 2;
            if (toks[i + 1].lower.size() <= 4 && is(j, ".")) ++j;
            if (j < n && is_year4(toks[j].surface)) ++j;
            ++out.dates;
            i = j;
            continue;
        }
        if (is_year4(t.surface)) {
            const int y = to_int(t.surface);
            if (y >= 1500 && y <= 2099) {
                ++out.dates;
                ++i;
                continue;
            }
        }
        if (all_digits(t.surface)) {
            std::size_t j = i + 1;
            while (j + 1 < n && (toks[j].surface == "," || toks[j].surface == ".") &&
                   adjacent(j - 1, j) && adjacent(j, j + 1) && all_digits(toks[j + 1].surface)) {
                j += 2;
            }
            ++out.cardinals;
            i = j;
            continue;
        }
        if (wordlists::number_words().count(t.lower)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (wordlists::number_words().count(toks[j].lower)) {
                    ++j;
                } else if (toks[j].surface == "-" && j + 1 < n && adjacent(j - 1, j) &&
                           adjacent(j, j + 1) && wordlists::number_words().count(toks[j + 1].lower)) {
                    j += 2;
                } else {
                    break;
                }
            }
            ++out.cardinals;
            i = j;
            continue;
        }
        ++i;
    }
    return out;
}

FeatureValues extract_entity(std::string_view raw_text) {
    const EntityCounts c = extract_entity_regex(raw_text);
    FeatureValues v;
    v[std::string(kDateId)] = d(c.dates);
    v[std::string(kCardinalId)] = d(c.cardinals);
    return v;
}

// ---------------------------------------------------------------------------
// Emotion

FeatureValues extract_emotion(const AnnotatedDoc& doc, const EmotionLexicon& lex) {
    EmotionLexicon::Intensities total{};
    std::array<std::size_t, kEmotions.size()> hits{};
    std::size_t words = 0;
    for (const auto& sent : doc.sentences) {
        for (const auto& t : sent.tokens) {
            if (!is_word(t)) continue;
            ++words;
            if (const auto* e = lex.find(t.lower)) {
                for (std::size_t k = 0; k < kEmotions.size(); ++k) {
                    total[k] += (*e)[k];
                    if ((*e)[k] > 0.0) ++hits[k];
                }
            }
        }
    }
    const double W = d(words);
    const double S = d(doc.sentences.size());
    FeatureValues v;
    std::array<std::optional<double>, kEmotions.size()> intensity;
    for (std::size_t k = 0; k < kEmotions.size(); ++k) {
        const std::string n(kEmotions[k]);
        intensity[k] = ratio(total[k], W);
        v["total_" + n + "_intensity"] = total[k];
        v["average_" + n + "_intensity_per_word"] = intensity[k];
        v["average_" + n + "_intensity_per_sentence"] = ratio(total[k], S);
        v["total_number_of_" + n + "_words"] = d(hits[k]);
    }
    if (words == 0) {
        v[std::string(feature_ids::kAverageEmotion)] = std::nullopt;
        v["negative_emotion"] = std::nullopt;
        v["positive_emotion"] = std::nullopt;
        return v;
    }
    double sum = 0.0;
    for (const auto& x : intensity) sum += *x;
    const auto at = [&](std::string_view e) { return *intensity[*emotion_index(e)]; };
    v[std::string(feature_ids::kAverageEmotion)] = sum / d(kEmotions.size());
    v["negative_emotion"] = (at("anger") + at("fear") + at("sadness")) / 3.0;
    v["positive_emotion"] = at("joy");
    return v;
}

// ---------------------------------------------------------------------------

ResourceSet available_resources(const ExtractionResources& r, bool dependencies) {
    return {r.zipf != nullptr, r.aoa != nullptr, r.emotion != nullptr, dependencies};
}

FeatureVector extract_all(const AnnotatedDoc& doc, std::string_view raw_text,
                          const FeatureRegistry& registry, const ExtractionResources& resources) {
    std::set<Family> families;
    for (const auto& spec : registry.specs()) families.insert(spec.family);

    FeatureValues all;
    auto merge = [&](FeatureValues part) {
        for (auto& [k, val] : part) all[k] = val;
    };
    auto guarded = [&](auto&& fn) {
        try {
            merge(fn());
        } catch (const std::exception&) {
            // Failed families stay absent and are masked below.
        }
    };

    if (families.count(Family::surface)) guarded([&] { return extract_surface(doc, raw_text); });
    if (families.count(Family::lexical_diversity)) guarded([&] { return extract_diversity(doc); });
    if (families.count(Family::pos)) guarded([&] { return extract_pos_features(doc, raw_text); });
    if (families.count(Family::readability)) guarded([&] { return extract_readability(doc); });
    if (families.count(Family::lexicon)) {
        guarded([&] { return extract_lexicon_features(doc, resources.zipf, resources.aoa); });
    }
    if (families.count(Family::entity)) guarded([&] { return extract_entity(raw_text); });
    if (families.count(Family::emotion) && resources.emotion) {
        guarded([&] { return extract_emotion(doc, *resources.emotion); });
    }
    if (families.count(Family::syntax)) {
        guarded([&] {
            FeatureValues v;
            v[std::string(feature_ids::kSyntacticDepth)] = doc_syntactic_depth(doc, resources.depth_mode);
            return v;
        });
    }
    if (families.count(Family::semantics)) {
        guarded([&] {
            FeatureValues v;
            std::optional<double> value;
            if (resources.external) {
                if (auto it = resources.external->find(doc.doc_id); it != resources.external->end()) {
                    value = doc_semantic_consistency(it->second);
                    v[std::string(feature_ids::kSemanticConsistency)] = value;
                    return v;
                }
            }
            if (resources.tfidf) {
                std::vector<SentenceVector> vecs;
                vecs.reserve(doc.sentences.size());
                for (const auto& sent : doc.sentences) {
                    vecs.push_back(vectorize(*resources.tfidf, sentence_terms(sent)));
                }
                value = doc_semantic_consistency(vecs);
            }
            v[std::string(feature_ids::kSemanticConsistency)] = value;
            return v;
        });
    }

    FeatureVector out;
    out.doc_id = doc.doc_id;
    out.values.assign(registry.size(), 0.0);
    out.missing.assign(registry.size(), true);
    for (std::size_t i = 0; i < registry.size(); ++i) {
        auto it = all.find(registry.specs()[i].id);
        if (it == all.end() || !it->second || !std::isfinite(*it->second)) continue;
        out.values[i] = *it->second;
        out.missing[i] = false;
    }
    return out;
}

}  // namespace stylo
