#include <doctest.h>

#include <random>
#include <string>

#include "pubcausal/text_stats.hpp"

using namespace pubcausal;

namespace {

// 5 sentences x 20 words, exactly 2 three-syllable words per sentence:
// fog = 0.4 * (100/5 + 100 * 10/100) = 12.0
std::string fog12_fixture() {
    std::string sentence;
    sentence += "animal equipment";  // 2 complex words (an-i-mal, e-quip-ment)
    for (int i = 0; i < 18; ++i) sentence += " cat";
    sentence += ".";
    std::string text;
    for (int s = 0; s < 5; ++s) {
        if (s) text += " ";
        text += sentence;
    }
    return text;
}

}  // namespace

TEST_CASE("syllable counting") {
    CHECK(count_syllables("go") == 1);
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("animal") == 3);
    CHECK(count_syllables("equipment") == 3);
    CHECK(count_syllables("table") == 1);   // silent e
    CHECK(count_syllables("create") == 1);  // ea group, then silent-e correction
    CHECK(count_syllables("e") == 1);       // never below 1
    CHECK(count_syllables("123") == 0);     // no letters
}

TEST_CASE("sentence counting") {
    CHECK(count_sentences("Go. Go. Go.") == 3);
    CHECK(count_sentences("Hello world") == 1);       // unterminated, minimum 1
    CHECK(count_sentences("What?! Really...") == 2);  // terminator runs collapse
    CHECK(count_sentences("") == 0);
}

TEST_CASE("gunning fog hand fixtures") {
    const std::string text = fog12_fixture();
    CHECK(count_words(text) == 100);
    CHECK(count_sentences(text) == 5);
    CHECK(count_complex_words(text) == 10);
    CHECK(gunning_fog(text) == doctest::Approx(12.0).epsilon(1e-12));

    CHECK(gunning_fog("Go. Go. Go.") == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(gunning_fog("") == 0.0);
    CHECK(gunning_fog("   \n\t ") == 0.0);
}

TEST_CASE("fog monotone under appended complex word") {
    std::mt19937_64 rng(7);
    const std::string simple[] = {"cat", "dog", "sun", "tree", "lake"};
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const int w = 1 + static_cast<int>(rng() % 30);
        for (int i = 0; i < w; ++i) {
            if (i) text += " ";
            text += rng() % 3 == 0 ? "animal" : simple[rng() % 5];
        }
        text += ".";
        const double before = gunning_fog(text);
        const double after = gunning_fog(text.substr(0, text.size() - 1) + " equipment.");
        CHECK(after >= before - 1e-12);
    }
}

TEST_CASE("token vs word counts") {
    CHECK(count_tokens("a b  c\nd") == 4);
    CHECK(count_tokens("1 2 3") == 3);
    CHECK(count_words("1 2 3") == 0);  // no letters
}
