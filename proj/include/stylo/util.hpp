#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// ---------------------------------------------------------------------------
// UTF-8

struct CodePoint {
    char32_t value;
    std::size_t offset;  // byte offset of the first unit
    std::size_t length;  // byte length (1-4); invalid bytes decode as U+FFFD, length 1
};

/// Decodes the code point starting at `pos`. `pos` must be < text.size().
CodePoint decode_utf8(std::string_view text, std::size_t pos);

bool is_unicode_space(char32_t c);
/// Word characters: ASCII letters and digits, plus non-ASCII code points
/// outside the punctuation, symbol and space blocks.
bool is_word_char(char32_t c);
/// A word character that is not an ASCII digit.
bool is_letter(char32_t c);
bool is_apostrophe(char32_t c);

std::size_t count_code_points(std::string_view text);

/// ASCII case folding; non-ASCII bytes are copied through.
std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s);

// ---------------------------------------------------------------------------
// Hashing and number formatting

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// ---------------------------------------------------------------------------
// CSV (RFC 4180)

struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line where the row starts
};

/// Incremental RFC 4180 reader over an in-memory buffer. Quoted fields may
/// contain separators, doubled quotes and line breaks.
class CsvReader {
public:
    explicit CsvReader(std::string_view data) : data_(data) {}

    /// Returns false at end of input. Throws ParseError on an unterminated
    /// quote or stray characters after a closing quote.
    bool next(CsvRow& row);

private:
    std::string_view data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

std::string csv_escape(std::string_view field);
std::string csv_join(const std::vector<std::string>& fields);

}  // namespace stylo
