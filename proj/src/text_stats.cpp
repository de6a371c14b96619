#include "pubcausal/text_stats.hpp"

#include <cctype>

namespace pubcausal {

namespace {

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
            return true;
        default:
            return false;
    }
}

bool has_letter(const std::string& token) {
    for (unsigned char c : token)
        if (std::isalpha(c)) return true;
    return false;
}

template <typename Fn>
void for_each_token(const std::string& text, Fn&& fn) {
    std::string token;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            if (!token.empty()) {
                fn(token);
                token.clear();
            }
        } else {
            token.push_back(static_cast<char>(c));
        }
    }
    if (!token.empty()) fn(token);
}

}  // namespace

size_t count_tokens(const std::string& text) {
    size_t n = 0;
    for_each_token(text, [&](const std::string&) { ++n; });
    return n;
}

size_t count_words(const std::string& text) {
    size_t n = 0;
    for_each_token(text, [&](const std::string& t) {
        if (has_letter(t)) ++n;
    });
    return n;
}

size_t count_sentences(const std::string& text) {
    size_t sentences = 0;
    bool content_since_break = false;
    bool in_terminator_run = false;
    for (unsigned char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (!in_terminator_run && content_since_break) {
                ++sentences;
                content_since_break = false;
            }
            in_terminator_run = true;
        } else {
            in_terminator_run = false;
            if (std::isalnum(c)) content_since_break = true;
        }
    }
    if (sentences == 0 && count_words(text) > 0) return 1;
    return sentences;
}

size_t count_syllables(const std::string& word) {
    std::string letters;
    letters.reserve(word.size());
    for (unsigned char c : word)
        if (std::isalpha(c)) letters.push_back(static_cast<char>(std::tolower(c)));
    if (letters.empty()) return 0;

    size_t groups = 0;
    bool in_group = false;
    for (char c : letters) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if (groups > 1 && letters.back() == 'e') --groups;
    return groups == 0 ? 1 : groups;
}

size_t count_complex_words(const std::string& text) {
    size_t n = 0;
    for_each_token(text, [&](const std::string& t) {
        if (has_letter(t) && count_syllables(t) >= 3) ++n;
    });
    return n;
}

double gunning_fog(const std::string& text) {
    const double words = static_cast<double>(count_words(text));
    if (words == 0.0) return 0.0;
    const double sentences = static_cast<double>(count_sentences(text));
    const double complex_words = static_cast<double>(count_complex_words(text));
    return 0.4 * (words / sentences + 100.0 * complex_words / words);
}

}  // namespace pubcausal
