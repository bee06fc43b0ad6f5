#include "stylo/annotate.hpp"

#include "stylo/error.hpp"
#include "stylo/util.hpp"
#include "wordlists.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <sstream>

namespace stylo {

namespace {

constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X", "SPACE"};

}  // namespace

std::string_view upos_name(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

std::optional<Upos> parse_upos(std::string_view name) {
    for (std::size_t i = 0; i < kUposNames.size(); ++i) {
        if (kUposNames[i] == name) return static_cast<Upos>(i);
    }
    return std::nullopt;
}

const std::vector<std::string_view>& stopword_list() { return wordlists::stopwords(); }
const std::vector<std::string_view>& abbreviation_list() { return wordlists::abbreviations(); }

bool is_stopword(std::string_view lower) { return wordlists::stopword_set().count(lower) > 0; }

// ---------------------------------------------------------------------------
// Sentence segmentation

namespace {

bool is_terminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == 0x2026; }

bool is_closer(char32_t c) {
    return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == U'}' || c == 0x201D ||
           c == 0x2019 || c == 0xBB;
}

bool is_opener(char32_t c) {
    return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == 0x201C || c == 0x2018 ||
           c == 0xAB;
}

bool starts_sentence(char32_t c) {
    return (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') || is_opener(c);
}

// True when the single period at `dot` closes an abbreviation or an initial.
bool is_abbreviation_period(std::string_view text, std::size_t dot) {
    std::size_t b = dot;
    while (b > 0) {
        const char c = text[b - 1];
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.';
        if (!keep) break;
        --b;
    }
    const std::string_view word = text.substr(b, dot + 1 - b);
    if (word.size() < 2) return false;
    if (word.size() == 2 && word[0] >= 'A' && word[0] <= 'Z') return true;  // initial, "J."
    return wordlists::abbreviation_set().count(ascii_lower(word)) > 0;
}

}  // namespace

std::vector<Span> segment_sentences(std::string_view text) {
    std::vector<Span> spans;
    constexpr std::size_t npos = std::string_view::npos;
    std::size_t start = npos;
    std::size_t last_content_end = 0;  // end of last non-space code point

    auto close = [&](std::size_t end) {
        if (start != npos && end > start) spans.push_back({start, end});
        start = npos;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const CodePoint cp = decode_utf8(text, i);
        if (is_unicode_space(cp.value)) {
            if (cp.value == U'\n' && start != npos) {
                // Blank line: another newline before any content.
                std::size_t j = i + 1;
                while (j < text.size()) {
                    const CodePoint n = decode_utf8(text, j);
                    if (n.value == U'\n') {
                        close(last_content_end);
                        break;
                    }
                    if (!is_unicode_space(n.value)) break;
                    j += n.length;
                }
            }
            i += cp.length;
            continue;
        }
        if (start == npos) start = i;

        if (!is_terminal(cp.value)) {
            i += cp.length;
            last_content_end = i;
            continue;
        }

        // Run of terminal marks followed by closing quotes/brackets.
        const std::size_t mark = i;
        std::size_t marks = 0;
        std::size_t j = i;
        while (j < text.size()) {
            const CodePoint n = decode_utf8(text, j);
            if (!is_terminal(n.value)) break;
            ++marks;
            j += n.length;
        }
        while (j < text.size()) {
            const CodePoint n = decode_utf8(text, j);
            if (!is_closer(n.value)) break;
            j += n.length;
        }
        const std::size_t run_end = j;
        i = run_end;
        last_content_end = run_end;

        std::size_t k = run_end;
        bool saw_space = false;
        while (k < text.size()) {
            const CodePoint n = decode_utf8(text, k);
            if (!is_unicode_space(n.value)) break;
            saw_space = true;
            k += n.length;
        }
        bool boundary = false;
        if (k >= text.size()) {
            boundary = true;
        } else if (saw_space && starts_sentence(decode_utf8(text, k).value)) {
            boundary = true;
        }
        if (boundary && marks == 1 && text[mark] == '.' && is_abbreviation_period(text, mark)) {
            boundary = false;
        }
        if (boundary) close(run_end);
    }
    close(last_content_end);
    return spans;
}

// ---------------------------------------------------------------------------
// Tokenization

namespace {

std::string fold(std::string_view surface) {
    std::string out;
    out.reserve(surface.size());
    for (std::size_t i = 0; i < surface.size();) {
        const CodePoint cp = decode_utf8(surface, i);
        if (cp.value == 0x2019) {
            out.push_back('\'');
        } else if (cp.length == 1 && surface[i] >= 'A' && surface[i] <= 'Z') {
            out.push_back(static_cast<char>(surface[i] - 'A' + 'a'));
        } else {
            out.append(surface.substr(i, cp.length));
        }
        i += cp.length;
    }
    return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::size_t base_offset) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const CodePoint cp = decode_utf8(text, i);
        if (is_unicode_space(cp.value)) {
            i += cp.length;
            continue;
        }
        const std::size_t begin = i;
        i += cp.length;
        if (is_word_char(cp.value)) {
            while (i < text.size()) {
                const CodePoint n = decode_utf8(text, i);
                if (is_word_char(n.value)) {
                    i += n.length;
                    continue;
                }
                if (is_apostrophe(n.value) && i + n.length < text.size() &&
                    is_word_char(decode_utf8(text, i + n.length).value)) {
                    i += n.length;
                    continue;
                }
                break;
            }
        }
        Token t;
        t.surface = std::string(text.substr(begin, i - begin));
        t.lower = fold(t.surface);
        t.char_start = base_offset + begin;
        t.char_end = base_offset + i;
        tokens.push_back(std::move(t));
    }
    return tokens;
}

// ---------------------------------------------------------------------------
// POS tagging

namespace {

bool is_symbol(char32_t c) {
    switch (c) {
        case U'$': case U'%': case U'&': case U'*': case U'+': case U'<': case U'=':
        case U'>': case U'@': case U'^': case U'|': case U'~': case U'#': case U'`':
        case U'\\': case 0xA2: case 0xA3: case 0xA5: case 0xA9: case 0xAE: case 0xB0:
        case 0xB1: case 0xD7: case 0xF7: case 0x20AC:
            return true;
        default:
            return (c >= 0x2190 && c <= 0x2BFF) || c >= 0x1F000;
    }
}

bool has_vowel(std::string_view s) {
    return s.find_first_of("aeiouy") != std::string_view::npos;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Upos tag_one(const Token& t, bool sentence_initial) {
    const CodePoint first = decode_utf8(t.surface, 0);
    if (!is_word_char(first.value)) {
        if (is_unicode_space(first.value)) return Upos::SPACE;
        return is_symbol(first.value) ? Upos::SYM : Upos::PUNCT;
    }
    if (first.value >= U'0' && first.value <= U'9') return Upos::NUM;
    const std::string_view w = t.lower;
    if (wordlists::number_words().count(w)) return Upos::NUM;

    if (auto it = wordlists::closed_class().find(w); it != wordlists::closed_class().end()) {
        return it->second;
    }
    if (!sentence_initial && first.value >= U'A' && first.value <= U'Z') return Upos::PROPN;
    if (auto it = wordlists::open_class().find(w); it != wordlists::open_class().end()) {
        return it->second;
    }
    if (w.size() > 4 && ends_with(w, "ly")) return Upos::ADV;
    if (ends_with(w, "ing")) {
        const auto stem = w.substr(0, w.size() - 3);
        if (stem.size() >= 3 && has_vowel(stem)) return Upos::VERB;
    }
    if (ends_with(w, "ed")) {
        const auto stem = w.substr(0, w.size() - 2);
        if (stem.size() >= 3 && has_vowel(stem)) return Upos::VERB;
    }
    for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "less"}) {
        if (w.size() >= suffix.size() + 3 && ends_with(w, suffix)) return Upos::ADJ;
    }
    return Upos::NOUN;
}

}  // namespace

void heuristic_pos_tag(std::vector<Token>& tokens) {
    bool initial = true;
    for (auto& t : tokens) {
        t.upos = tag_one(t, initial);
        if (t.upos != Upos::PUNCT && t.upos != Upos::SYM) initial = false;
    }
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i].lower == "to" &&
            (tokens[i + 1].upos == Upos::VERB || tokens[i + 1].upos == Upos::AUX)) {
            tokens[i].upos = Upos::PART;
        }
    }
}

// ---------------------------------------------------------------------------
// Syllables

int count_syllables(std::string_view word) {
    std::string w;
    bool has_letter = false;
    for (std::size_t i = 0; i < word.size();) {
        const CodePoint cp = decode_utf8(word, i);
        if (is_letter(cp.value)) {
            has_letter = true;
            if (cp.value < 0x80) w.push_back(static_cast<char>(cp.value | 0x20));
            else w.push_back('#');  // non-ASCII letter, treated as a consonant
        }
        i += cp.length;
    }
    if (!has_letter) return 0;

    auto vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    int groups = 0;
    bool prev_vowel = false;
    for (char c : w) {
        const bool v = vowel(c);
        if (v && !prev_vowel) ++groups;
        prev_vowel = v;
    }
    const std::size_t n = w.size();
    if (n >= 2 && w[n - 1] == 'e' && !vowel(w[n - 2])) {
        const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !vowel(w[n - 3]);
        if (!consonant_le) --groups;
    }
    return std::max(groups, 1);
}

// ---------------------------------------------------------------------------
// Heuristic dependencies

std::vector<int> heuristic_heads(const std::vector<Token>& tokens) {
    const int n = static_cast<int>(tokens.size());
    std::vector<int> head(tokens.size(), 0);
    if (n == 0) return head;

    auto tag = [&](int i) { return tokens[static_cast<std::size_t>(i)].upos; };
    auto is_punct = [&](int i) {
        const Upos u = tag(i);
        return u == Upos::PUNCT || u == Upos::SYM || u == Upos::SPACE;
    };
    auto is_nominal = [&](int i) {
        const Upos u = tag(i);
        return u == Upos::NOUN || u == Upos::PROPN || u == Upos::PRON;
    };
    auto is_modifier = [&](int i) {
        const Upos u = tag(i);
        return u == Upos::DET || u == Upos::ADJ || u == Upos::NUM || u == Upos::ADV ||
               u == Upos::ADP;
    };

    int root = -1;
    for (int i = 0; i < n && root < 0; ++i) if (tag(i) == Upos::VERB) root = i;
    for (int i = 0; i < n && root < 0; ++i) if (tag(i) == Upos::AUX) root = i;
    for (int i = 0; i < n && root < 0; ++i) if (!is_punct(i)) root = i;
    if (root < 0) root = 0;

    std::vector<int> clause_heads;
    for (int i = 0; i < n; ++i) {
        if (i == root || (tag(i) == Upos::VERB && i > root)) clause_heads.push_back(i);
    }
    auto left_clause_head = [&](int i) {
        int best = root;
        for (int c : clause_heads) {
            if (c < i) best = c;
        }
        return best;
    };
    auto right_verb = [&](int i, bool stop_at_punct) {
        for (int j = i + 1; j < n; ++j) {
            if (stop_at_punct && is_punct(j)) return -1;
            if (tag(j) == Upos::VERB) return j;
        }
        return -1;
    };

    std::vector<int> parent(tokens.size(), -1);  // 0-based, -1 for root
    for (std::size_t c = 1; c < clause_heads.size(); ++c) {
        const int v = clause_heads[c];
        const int prev = clause_heads[c - 1];
        bool coordinated = false;
        for (int j = prev + 1; j < v; ++j) {
            if (tag(j) == Upos::CCONJ) coordinated = true;
        }
        parent[static_cast<std::size_t>(v)] =
            coordinated ? (prev == root ? root : parent[static_cast<std::size_t>(prev)]) : prev;
    }

    for (int i = 0; i < n; ++i) {
        if (i == root || parent[static_cast<std::size_t>(i)] >= 0) continue;
        int h = -1;
        const Upos u = tag(i);
        if (is_nominal(i)) {
            if (i + 1 < n && is_nominal(i + 1)) {
                h = i + 1;  // compound run: attach to the next nominal
            } else {
                int k = i - 1;
                while (k >= 0 && is_modifier(k) && tag(k) != Upos::ADP) --k;
                if (k >= 0 && tag(k) == Upos::ADP) {
                    int m = k - 1;
                    while (m >= 0 && is_modifier(m) && tag(m) != Upos::ADP) --m;
                    if (m >= 0 && is_nominal(m)) h = m;
                }
            }
        } else if (is_modifier(i)) {
            for (int j = i + 1; j < n; ++j) {
                if (is_nominal(j)) {
                    h = j;
                    break;
                }
                if (!is_modifier(j)) break;
            }
        } else if (u == Upos::SCONJ || u == Upos::CCONJ) {
            h = right_verb(i, false);
        } else if (u == Upos::AUX) {
            h = right_verb(i, true);
        }
        if (h < 0 || h == i) h = left_clause_head(i);
        if (h == i) h = root;
        parent[static_cast<std::size_t>(i)] = h;
    }

    for (int i = 0; i < n; ++i) {
        head[static_cast<std::size_t>(i)] = i == root ? 0 : parent[static_cast<std::size_t>(i)] + 1;
    }
    return head;
}

AnnotatedDoc annotate_text(std::string doc_id, std::string_view text, const BuiltinOptions& options) {
    AnnotatedDoc doc;
    doc.doc_id = std::move(doc_id);
    doc.source = AnnotationSource::builtin;
    for (const Span& span : segment_sentences(text)) {
        Sentence s;
        s.tokens = tokenize(text.substr(span.begin, span.end - span.begin), span.begin);
        if (s.tokens.empty()) continue;
        heuristic_pos_tag(s.tokens);
        for (auto& t : s.tokens) {
            t.is_stopword = is_stopword(t.lower);
            t.syllables = count_syllables(t.surface);
        }
        if (options.heuristic_dependencies) {
            const auto heads = heuristic_heads(s.tokens);
            for (std::size_t i = 0; i < heads.size(); ++i) s.tokens[i].head = heads[i];
            s.has_dependencies = true;
        }
        doc.sentences.push_back(std::move(s));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Depth

std::vector<int> dependency_depths(const Sentence& sentence) {
    const std::size_t n = sentence.tokens.size();
    std::vector<int> depth(n, -1);
    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int h = sentence.tokens[i].head;
        if (h < 0 || static_cast<std::size_t>(h) > n || static_cast<std::size_t>(h) == i + 1) {
            throw InputError("token " + std::to_string(i + 1) + " has invalid head " +
                             std::to_string(h));
        }
        if (h == 0) {
            ++roots;
            depth[i] = 0;
        }
    }
    if (roots != 1) {
        throw InputError("sentence must have exactly one root, found " + std::to_string(roots));
    }
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < n; ++i) {
        path.clear();
        std::size_t cur = i;
        while (depth[cur] < 0) {
            path.push_back(cur);
            if (path.size() > n) throw InputError("dependency cycle involving token " + std::to_string(i + 1));
            cur = static_cast<std::size_t>(sentence.tokens[cur].head - 1);
        }
        int d = depth[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++d;
    }
    return depth;
}

double doc_syntactic_depth(const AnnotatedDoc& doc, DepthMode mode) {
    if (doc.sentences.empty()) throw InputError("depth unavailable: document " + doc.doc_id + " has no sentences");
    double sum = 0.0;
    for (const auto& s : doc.sentences) {
        if (!s.has_dependencies) {
            throw InputError("depth unavailable: document " + doc.doc_id +
                             " has sentences without dependency information");
        }
        const auto depths = dependency_depths(s);
        if (mode == DepthMode::max_token) {
            sum += *std::max_element(depths.begin(), depths.end());
        } else {
            sum += static_cast<double>(std::accumulate(depths.begin(), depths.end(), 0LL)) /
                   static_cast<double>(depths.size());
        }
    }
    return sum / static_cast<double>(doc.sentences.size());
}

// ---------------------------------------------------------------------------
// CoNLL-U

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> cols;
    std::size_t pos = 0;
    while (true) {
        const auto tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            cols.push_back(line.substr(pos));
            return cols;
        }
        cols.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct PendingToken {
    int id;
    std::string form;
    std::string upos;
    std::string head;
    bool space_after;
};

class ConlluBuilder {
public:
    ConlluResult result;

    void new_doc(std::string id) {
        flush_sentence();
        finish_doc();
        current_ = AnnotatedDoc{};
        current_.doc_id = std::move(id);
        current_.source = AnnotationSource::conllu;
        offset_ = 0;
        have_doc_ = true;
    }

    void add_token(PendingToken t, std::size_t line) {
        if (pending_.empty()) first_line_ = line;
        pending_.push_back(std::move(t));
    }

    void flush_sentence() {
        if (pending_.empty()) return;
        if (!have_doc_) new_doc_implicit();
        std::string error;
        Sentence s = build(error);
        if (!error.empty()) {
            result.rejected.push_back({first_line_, current_.doc_id, error});
        } else {
            current_.sentences.push_back(std::move(s));
        }
        pending_.clear();
    }

    void finish() {
        flush_sentence();
        finish_doc();
    }

private:
    AnnotatedDoc current_;
    bool have_doc_ = false;
    std::vector<PendingToken> pending_;
    std::size_t first_line_ = 0;
    std::size_t offset_ = 0;

    void new_doc_implicit() {
        current_ = AnnotatedDoc{};
        current_.source = AnnotationSource::conllu;
        offset_ = 0;
        have_doc_ = true;
    }

    void finish_doc() {
        if (have_doc_ && !current_.sentences.empty()) result.docs.push_back(std::move(current_));
        have_doc_ = false;
    }

    Sentence build(std::string& error) {
        Sentence s;
        const std::size_t n = pending_.size();
        std::size_t blank_heads = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pending_[i].id != static_cast<int>(i + 1)) {
                error = "token IDs are not sequential at ID " + std::to_string(pending_[i].id);
                return s;
            }
            if (pending_[i].head == "_") ++blank_heads;
        }
        if (blank_heads != 0 && blank_heads != n) {
            error = "HEAD column is only partially filled";
            return s;
        }
        s.has_dependencies = blank_heads == 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = pending_[i];
            Token t;
            t.surface = p.form;
            t.lower = fold(p.form);
            const auto upos = parse_upos(p.upos);
            if (!upos) {
                error = "unknown UPOS \"" + p.upos + "\" at ID " + std::to_string(p.id);
                return s;
            }
            t.upos = *upos;
            if (s.has_dependencies) {
                const auto h = parse_int(p.head);
                if (!h || *h < 0 || static_cast<std::size_t>(*h) > n) {
                    error = "HEAD \"" + p.head + "\" out of range at ID " + std::to_string(p.id);
                    return s;
                }
                t.head = *h;
            }
            t.char_start = offset_;
            t.char_end = offset_ + std::max<std::size_t>(p.form.size(), 1);
            offset_ = t.char_end + (p.space_after ? 1 : 0);
            t.is_stopword = is_stopword(t.lower);
            t.syllables = count_syllables(t.surface);
            s.tokens.push_back(std::move(t));
        }
        if (s.has_dependencies) {
            try {
                (void)dependency_depths(s);
            } catch (const InputError& e) {
                error = e.what();
            }
        }
        return s;
    }
};

}  // namespace

ConlluResult parse_conllu(std::string_view data) {
    ConlluBuilder b;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= data.size()) {
        auto end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        std::string_view line = data.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;

        if (trim(line).empty()) {
            b.flush_sentence();
            if (end == data.size()) break;
            continue;
        }
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            constexpr std::string_view key = "newdoc id";
            if (body.substr(0, key.size()) == key) {
                auto rest = trim(body.substr(key.size()));
                if (!rest.empty() && rest.front() == '=') rest = trim(rest.substr(1));
                b.new_doc(std::string(rest));
            }
            continue;
        }
        const auto cols = split_tabs(line);
        if (cols.size() != 10) {
            throw ParseError("expected 10 tab-separated columns, found " + std::to_string(cols.size()),
                             line_no);
        }
        if (cols[0].find_first_of("-.") != std::string_view::npos) continue;  // multiword / empty node
        const auto id = parse_int(cols[0]);
        if (!id || *id < 1) throw ParseError("invalid token ID \"" + std::string(cols[0]) + "\"", line_no);
        const bool space_after = cols[9].find("SpaceAfter=No") == std::string_view::npos;
        b.add_token({*id, std::string(cols[1]), std::string(cols[3]), std::string(cols[6]), space_after},
                    line_no);
    }
    b.finish();
    return std::move(b.result);
}

ConlluResult read_conllu(const std::string& path) { return parse_conllu(read_file(path)); }

std::string write_conllu(const std::vector<AnnotatedDoc>& docs) {
    std::ostringstream out;
    for (const auto& doc : docs) {
        out << "# newdoc id = " << doc.doc_id << '\n';
        for (const auto& s : doc.sentences) {
            for (std::size_t i = 0; i < s.tokens.size(); ++i) {
                const auto& t = s.tokens[i];
                out << (i + 1) << '\t' << t.surface << "\t_\t" << upos_name(t.upos) << "\t_\t_\t";
                if (s.has_dependencies) out << t.head;
                else out << '_';
                out << "\t_\t_\t_\n";
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace stylo
