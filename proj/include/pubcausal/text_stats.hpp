#pragma once

#include <cstddef>
#include <string>

namespace pubcausal {

// Whitespace-token count (every token counts, wordlike or not).
size_t count_tokens(const std::string& text);

// Tokens containing at least one ASCII letter.
size_t count_words(const std::string& text);

// Maximal runs of [.!?] preceded by word content; at least 1 when the text
// has any words.
size_t count_sentences(const std::string& text);

// Vowel-group syllable count over aeiouy with a trailing silent-e
// subtraction; minimum 1 for any token containing a letter.
size_t count_syllables(const std::string& word);

// A word is complex at >= 3 syllables.
size_t count_complex_words(const std::string& text);

// 0.4 * (words/sentences + 100 * complex_words/words).
// Empty or letter-free text scores 0.0.
double gunning_fog(const std::string& text);

}  // namespace pubcausal
