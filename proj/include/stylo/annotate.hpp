#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylo {

/// The 17 Universal POS tags plus SPACE.
enum class Upos : std::uint8_t {
    ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X,
    SPACE
};

inline constexpr std::size_t kUposCount = 18;

std::string_view upos_name(Upos tag);
std::optional<Upos> parse_upos(std::string_view name);

struct Token {
    std::string surface;
    std::string lower;
    Upos upos = Upos::X;
    int head = 0;  // 0 = root, else 1-based index in the sentence
    std::size_t char_start = 0;
    std::size_t char_end = 0;
    bool is_stopword = false;
    int syllables = 0;
};

struct Sentence {
    std::vector<Token> tokens;
    bool has_dependencies = false;
};

enum class AnnotationSource { builtin, conllu };

struct AnnotatedDoc {
    std::string doc_id;
    std::vector<Sentence> sentences;
    AnnotationSource source = AnnotationSource::builtin;
};

struct Span {
    std::size_t begin;
    std::size_t end;  // exclusive

    bool operator==(const Span&) const = default;
};

// ---------------------------------------------------------------------------
// Builtin pipeline

/// Splits text into sentence spans (byte offsets, trimmed of surrounding
/// whitespace). A boundary follows a run of '.', '!' or '?' (plus any closing
/// quotes or brackets) when the next non-space character is uppercase, a
/// digit, an opening quote/bracket, or end of text. Blank lines always end a
/// sentence. A period does not end a sentence after an entry of
/// abbreviation_list() or after a single-letter initial.
std::vector<Span> segment_sentences(std::string_view text);

/// Word tokens are maximal runs of word characters, with apostrophes kept
/// when they sit between two word characters ("don't"). Every other
/// non-whitespace code point is a token of its own. Offsets are relative to
/// `text` and shifted by `base_offset`. Only surface, lower and offsets are set.
std::vector<Token> tokenize(std::string_view text, std::size_t base_offset = 0);

/// Rule-based tagger, applied in this order:
///   1. whitespace -> SPACE; punctuation marks -> PUNCT; other symbols -> SYM
///   2. digits or number words -> NUM
///   3. closed-class lexicon (AUX, DET, PRON, ADP, CCONJ, SCONJ, PART, INTJ)
///   4. capitalized and not sentence-initial -> PROPN
///   5. small open-class lexicon of frequent verbs, adverbs and adjectives
///   6. suffixes: -ly ADV; -ing / -ed with a stem of 3+ letters containing a
///      vowel VERB; -ous, -ful, -ive, -able, -ible, -less ADJ
///   7. NOUN
/// A final pass retags "to" as PART when the next token is a VERB or AUX.
void heuristic_pos_tag(std::vector<Token>& tokens);

/// Vowel groups (a, e, i, o, u, y) minus a silent final 'e' that follows a
/// consonant, except in consonant + "le" endings. At least 1 for any token
/// with a letter; 0 otherwise.
int count_syllables(std::string_view word);

bool is_stopword(std::string_view lower);

/// Heuristic dependency attachment for tagged tokens; returns 1-based heads.
///
/// The root is the first VERB (else AUX, else first non-punctuation token).
/// Later verbs attach to the root when introduced by a coordinating
/// conjunction and to the previous verb otherwise. SCONJ/CCONJ attach to the
/// next verb. DET, ADJ, NUM, ADP and ADV modifiers attach to the next
/// nominal (NOUN, PROPN, PRON) before any verb or punctuation. A nominal
/// preceded by "ADP" (with only modifiers between) attaches to the nominal
/// before the ADP; other nominals attach to the nearest verb on the left, or
/// the root. Everything else attaches to the nearest verb on the left, or the
/// root.
std::vector<int> heuristic_heads(const std::vector<Token>& tokens);

struct BuiltinOptions {
    bool heuristic_dependencies = true;
};

AnnotatedDoc annotate_text(std::string doc_id, std::string_view text, const BuiltinOptions& options = {});

// ---------------------------------------------------------------------------
// CoNLL-U

struct ConlluDiagnostic {
    std::size_t line;  // line of the first token of the rejected sentence
    std::string doc_id;
    std::string message;
};

struct ConlluResult {
    std::vector<AnnotatedDoc> docs;
    std::vector<ConlluDiagnostic> rejected;
};

/// Reads CoNLL-U. Throws ParseError on a token line without 10 columns or a
/// non-integer ID. Sentences with an out-of-range or cyclic HEAD, an unknown
/// UPOS, or a partially filled HEAD column are rejected and reported.
/// "# newdoc id = X" starts document X; sentences before any such comment
/// belong to a document with an empty id.
ConlluResult parse_conllu(std::string_view data);
ConlluResult read_conllu(const std::string& path);

/// Writes ID, FORM, UPOS and HEAD; other columns as "_".
std::string write_conllu(const std::vector<AnnotatedDoc>& docs);

// ---------------------------------------------------------------------------
// Syntactic depth

/// Number of head edges from each token to the root. Throws InputError on a
/// missing root, a cycle or an out-of-range head.
std::vector<int> dependency_depths(const Sentence& sentence);

enum class DepthMode { mean_token, max_token };

/// Unweighted mean over sentences of the per-sentence mean (or max) token
/// depth. Throws InputError ("depth unavailable") if any sentence lacks
/// dependencies.
double doc_syntactic_depth(const AnnotatedDoc& doc, DepthMode mode = DepthMode::mean_token);

/// Helpers exposed for documentation and tests.
const std::vector<std::string_view>& stopword_list();
const std::vector<std::string_view>& abbreviation_list();

}  // namespace stylo
