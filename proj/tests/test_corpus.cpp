#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "pubcausal/corpus.hpp"
#include "pubcausal/text_stats.hpp"

using namespace pubcausal;

namespace {

PaperRecord make_paper(const std::string& id, int year, std::vector<std::string> authors,
                       int pages = 8, VenueKind kind = VenueKind::conference) {
    PaperRecord p;
    p.paper_id = id;
    p.year = year;
    p.authors = std::move(authors);
    p.page_count = pages;
    p.venue_kind = kind;
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("author normalization") {
    CHECK(normalize_author("A.  One") == normalize_author("a. one"));
    CHECK(normalize_author("José García") == "jose garcia");
    CHECK(normalize_author("Müller") == "muller");
    CHECK(normalize_author("  Spaced   Out ") == "spaced out");
    CHECK(normalize_author("Łukasz Šimon") == "lukasz simon");
}

TEST_CASE("row expansion") {
    const auto one = expand_author_rows({make_paper("p1", 2016, {"A", "B", "C"})});
    CHECK(one.rows.size() == 3);
    CHECK(one.rows[0].author_id == "a");
    CHECK(one.rows[2].paper_id == "p1");

    CHECK(expand_author_rows({}).rows.empty());

    const auto shared = expand_author_rows(
        {make_paper("p1", 2016, {"a. one"}), make_paper("p2", 2017, {"A.  One"})});
    REQUIRE(shared.rows.size() == 2);
    CHECK(shared.rows[0].author_id == shared.rows[1].author_id);

    const auto dup = expand_author_rows({make_paper("p1", 2016, {"A. One", "a.  one"})});
    CHECK(dup.rows.size() == 1);
    CHECK(dup.warnings.size() == 1);
}

TEST_CASE("row count conservation over random corpora") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PaperRecord> papers;
        size_t expected = 0;
        const int k = static_cast<int>(rng() % 20);
        for (int i = 0; i < k; ++i) {
            std::vector<std::string> authors;
            const int na = 1 + static_cast<int>(rng() % 6);
            for (int a = 0; a < na; ++a)
                authors.push_back("auth" + std::to_string(rng() % 1000) + "_" + std::to_string(a));
            expected += authors.size();
            papers.push_back(make_paper("p" + std::to_string(i), 2015, authors));
        }
        CHECK(expand_author_rows(papers).rows.size() == expected);
    }
}

TEST_CASE("paper features") {
    PaperRecord rec = make_paper("p", 2018, {"A", "B", "C", "D"}, 9);
    std::string text;
    for (int i = 0; i < 4000; ++i) text += (i ? " word" : "word");
    rec.full_text = text;
    const PaperFeatures f = compute_paper_features(rec);
    CHECK(f.n_authors == 4);
    CHECK(f.page_length == 9);
    CHECK(f.word_count == 4000);
    CHECK(f.fog_index > 0.0);
    CHECK(f.is_conference == 1);

    PaperRecord journal = make_paper("j", 2018, {"A"}, 20, VenueKind::journal);
    const PaperFeatures g = compute_paper_features(journal);
    CHECK(g.word_count == 0);
    CHECK(g.fog_index == 0.0);
    CHECK(g.is_conference == 0);
}

TEST_CASE("rows CSV round trip and determinism") {
    std::vector<PaperRecord> papers = {make_paper("p1", 2016, {"A. One", "B. Two"}, 5),
                                       make_paper("p2", 2017, {"B. Two"}, 0, VenueKind::journal)};
    papers[0].full_text = "Simple words here. More animal equipment vocabulary.";
    auto expanded = expand_author_rows(papers);
    CountryTable countries;
    countries[{"b. two", 2017}] = "US";
    apply_countries(expanded.rows, countries);
    const auto joined = join_corpus_rows(papers, expanded.rows);

    const std::string path1 = "test_rows_1.csv";
    const std::string path2 = "test_rows_2.csv";
    write_rows_csv(path1, joined);
    write_rows_csv(path2, joined);
    CHECK(slurp(path1) == slurp(path2));

    const auto back = read_rows_csv(path1);
    REQUIRE(back.size() == 3);
    CHECK(back[0].author_id == "a. one");
    CHECK(back[0].features.word_count == 7);
    CHECK(back[2].country == std::optional<std::string>("US"));
    CHECK(back[2].venue_kind == VenueKind::journal);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}
