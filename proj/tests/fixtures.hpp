#pragma once

// Generators shared by the unit tests and the acceptance binary.

#include "stylo/features.hpp"

#include <cmath>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylo::fixtures {

inline const char* const kWords[] = {"the", "cat", "sat", "on", "mat", "quickly", "running", "beautiful", "dog",
                                     "and", "because", "we", "they", "walked", "house", "in", "three", "42",
                                     "1990", "very", "happy", "sad", "anger", "terrible", "joyful", "of", "it",
                                     "is", "was", "caf\xC3\xA9"};

// Sentences start with a capital, end with '.', '!' or '?'; the doc ends
// with a newline so that doc + doc splits cleanly at the join.
inline std::string random_doc(std::mt19937_64& rng) {
    std::string out;
    const std::size_t sentences = 1 + rng() % 5;
    for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t n = 1 + rng() % 12;
        for (std::size_t i = 0; i < n; ++i) {
            std::string w = kWords[rng() % (sizeof(kWords) / sizeof(kWords[0]))];
            if (i == 0 && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
            if (i == 0 && !(w[0] >= 'A' && w[0] <= 'Z')) w = "The";
            out += w;
            if (i + 1 < n) out += (rng() % 8 == 0) ? ", " : (rng() % 10 == 0 ? "\t" : " ");
        }
        out += ".!?"[rng() % 3];
        out += (s + 1 < sentences) ? (rng() % 4 == 0 ? "\n\n" : " ") : "\n";
    }
    return out;
}

inline EmotionLexicon random_emotion_lexicon(std::mt19937_64& rng) {
    EmotionLexicon lex;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* w : kWords) {
        if (rng() % 2) continue;
        for (auto e : kEmotions) {
            if (rng() % 3 == 0) lex.set(w, e, u(rng));
        }
    }
    return lex;
}

inline constexpr std::string_view kGoldenText = "The cat sat on the mat. Dogs run quickly!";

// Hand counts for kGoldenText.
// Tokens: The cat sat on the mat . | Dogs run quickly !
// W = 9 words, S = 2, U = 8 (the x2), letters L = 31, characters = 33,
// syllables Y = 10 (quickly = 2), stopwords {the, on, the} = 3,
// long words (> 6 letters) = 1, complex words = 0, spaces = 8.
inline std::vector<std::pair<std::string_view, double>> golden_values() {
    const double W = 9, S = 2, U = 8, L = 31, Y = 10, C = 0;
    return {
        {"total_number_of_words", W},
        {"total_number_of_unique_words", U},
        {"total_number_of_sentences", S},
        {"total_number_of_characters", 33},
        {"total_number_of_letters", L},
        {"total_number_of_syllables", Y},
        {"total_number_of_stop_words", 3},
        {"total_number_of_unique_stop_words", 2},
        {"total_number_of_long_words", 1},
        {"total_number_of_capitalized_words", 2},
        {"average_number_of_words_per_sentence", W / S},
        {"simple_type_token_ratio", U / W},
        {"root_type_token_ratio", U / 3.0},
        {"corrected_type_token_ratio", U / std::sqrt(18.0)},
        {"total_number_of_determiners", 2},
        {"simple_determiners_variation", 0.5},
        {"total_number_of_punctuations", 2},
        {"total_number_of_spaces", 8},
        {"total_number_of_unique_spaces", 1},
        {"coleman_liau_index", 0.0588 * (100 * L / W) - 0.296 * (100 * S / W) - 15.8},
        {"flesch_reading_ease", 206.835 - 1.015 * (W / S) - 84.6 * (Y / W)},
        {"flesch_kincaid_grade_level", 0.39 * (W / S) + 11.8 * (Y / W) - 15.59},
        {"automated_readability_index", 4.71 * (L / W) + 0.5 * (W / S) - 21.43},
        {"gunning_fog_index", 0.4 * (W / S + 100 * C / W)},
        {"smog_index", 3.1291 + 1.0430 * std::sqrt(C * 30.0 / S)},
    };
}

}  // namespace stylo::fixtures
