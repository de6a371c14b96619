#include <doctest.h>

#include <cstdio>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/lexicon.hpp"

using namespace pubcausal;

TEST_CASE("default lexicon covers the 50 canonical entities") {
    const EntityLexicon lex = default_lexicon();
    CHECK(lex.entries.size() == 50);
    for (const auto& [id, patterns] : lex.entries) {
        CHECK(is_canonical_entity(id));
        CHECK(!patterns.empty());
    }
}

TEST_CASE("lexicon load validation") {
    const std::string path = "test_lexicon.csv";

    SUBCASE("unknown entity id") {
        std::vector<std::vector<std::string>> rows;
        for (const char* id : kCanonicalEntities) rows.push_back({id, lower_ascii(id)});
        rows.push_back({"lstms", "lstms"});
        write_csv_file(path, {"entity_id", "pattern"}, rows);
        CHECK_THROWS_WITH_AS(load_lexicon(path), doctest::Contains("unknown entity_id"),
                             DataError);
    }
    SUBCASE("missing canonical id") {
        std::vector<std::vector<std::string>> rows;
        for (const char* id : kCanonicalEntities)
            if (std::string(id) != "causal") rows.push_back({id, lower_ascii(id)});
        write_csv_file(path, {"entity_id", "pattern"}, rows);
        CHECK_THROWS_WITH_AS(load_lexicon(path), doctest::Contains("missing canonical id"),
                             DataError);
    }
    SUBCASE("default lexicon round-trips through the CSV") {
        write_lexicon_csv(path, default_lexicon());
        const EntityLexicon lex = load_lexicon(path);
        CHECK(lex.entries.size() == 50);
        CHECK(lex.entries.at("bidirectional lstm").count("bilstm") == 1);
    }
    std::remove(path.c_str());
}

TEST_CASE("longest match suppression") {
    const EntityLexicon lex = default_lexicon();

    const auto m1 = match_entities("p", "we use a bidirectional lstm encoder", lex);
    CHECK(m1.entities == std::set<std::string>{"bidirectional lstm"});

    const auto m2 = match_entities("p", "an lstm and a bidirectional lstm", lex);
    CHECK(m2.entities == std::set<std::string>{"lstm", "bidirectional lstm"});

    CHECK(match_entities("p", "", lex).entities.empty());

    // word boundaries: no match inside a longer token
    CHECK(match_entities("p", "blstmx", lex).entities.empty());
}

TEST_CASE("adding a pattern only removes entities via longest-match suppression") {
    EntityLexicon small;
    for (const char* id : kCanonicalEntities) small.entries[id];
    small.entries["lstm"].insert("lstm");

    const std::string text = "a bidirectional lstm model";
    CHECK(match_entities("p", text, small).entities == std::set<std::string>{"lstm"});

    // unrelated pattern: nothing removed
    EntityLexicon plus = small;
    plus.entries["attention"].insert("attention");
    CHECK(match_entities("p", text, plus).entities == std::set<std::string>{"lstm"});

    // overlapping longer pattern: suppression removes the shorter match
    EntityLexicon longer = small;
    longer.entries["bidirectional lstm"].insert("bidirectional lstm");
    CHECK(match_entities("p", text, longer).entities ==
          std::set<std::string>{"bidirectional lstm"});
}

TEST_CASE("coverage by year") {
    const EntityLexicon lex = default_lexicon();
    std::vector<EntityMentionSet> mentions;
    std::vector<std::pair<std::string, int>> papers;

    SUBCASE("direct ratio") {
        for (int i = 0; i < 4; ++i) papers.push_back({"p" + std::to_string(i), 2019});
        mentions.push_back({"p0", {"lstm"}});
        mentions.push_back({"p1", {"attention"}});
        mentions.push_back({"p2", {}});
        const auto cov = coverage_by_year(mentions, papers);
        REQUIRE(cov.size() == 1);
        CHECK(cov[0].year == 2019);
        CHECK(cov[0].pct_with_entity == doctest::Approx(50.0));
    }
    SUBCASE("all entity-free") {
        for (int i = 0; i < 3; ++i) papers.push_back({"p" + std::to_string(i), 2018});
        const auto cov = coverage_by_year(mentions, papers);
        REQUIRE(cov.size() == 1);
        CHECK(cov[0].pct_with_entity == 0.0);
    }
    SUBCASE("engineered 2019 fixture hits 47.56") {
        // 39 of 82 full-text papers carry an entity
        for (int i = 0; i < 82; ++i) {
            papers.push_back({"p" + std::to_string(i), 2019});
            if (i < 39) mentions.push_back({"p" + std::to_string(i), {"embeddings"}});
        }
        const auto cov = coverage_by_year(mentions, papers);
        REQUIRE(cov.size() == 1);
        CHECK(cov[0].pct_with_entity == doctest::Approx(47.56).epsilon(0.0002));
        CHECK(cov[0].pct_with_entity >= 0.0);
        CHECK(cov[0].pct_with_entity <= 100.0);
    }
    SUBCASE("years without full text are omitted") {
        papers.push_back({"p0", 2018});
        mentions.push_back({"p0", {"lstm"}});
        const auto cov = coverage_by_year(mentions, papers);
        CHECK(cov.size() == 1);  // no 2019 row
    }
}

TEST_CASE("mentions CSV is sorted and round-trips") {
    std::vector<EntityMentionSet> sets = {{"pb", {"lstm", "attention"}}, {"pa", {"causal"}}};
    const std::string path = "test_mentions.csv";
    write_mentions_csv(path, sets);
    const CsvTable csv = read_csv_file(path);
    REQUIRE(csv.rows.size() == 3);
    CHECK(csv.rows[0][0] == "pa");
    CHECK(csv.rows[1][1] == "attention");

    const auto back = read_mentions_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].paper_id == "pa");
    CHECK(back[1].entities.size() == 2);
    std::remove(path.c_str());
}
