#include <doctest.h>

#include <ios>

#include "qnlp/diagram.hpp"
#include "qnlp/lexicon.hpp"

using namespace qnlp;

TEST_CASE("seed lexicon carries the example sentence typings") {
    const Lexicon lex = seed_lexicon();
    auto jaata = lex.lookup("jaata");
    REQUIRE(jaata.size() == 1);
    CHECK(jaata[0].type.atoms ==
          TypeSequence{{"o", 1}, {"pi", 1}, {"s", 0}, {"tau", -1}});
    CHECK(jaata[0].entry_id == "jaata#0");

    auto hu = lex.lookup("hu");
    REQUIRE(hu.size() == 1);
    CHECK(hu[0].type.atoms == TypeSequence{{"tau", 0}});

    auto khaya = lex.lookup("khaya");
    REQUIRE(khaya.size() == 1);
    CHECK(khaya[0].type.atoms == TypeSequence{{"o", 1}, {"n", 1}, {"s", 0}});

    auto ne = lex.lookup("ne");
    REQUIRE(ne.size() == 1);
    CHECK(ne[0].type.atoms == TypeSequence{{"k1", -1}});

    CHECK(lex.lookup("Ram").empty());
    CHECK(lex.lookup("zzz").empty());
}

TEST_CASE("both seed sentences parse") {
    const Lexicon lex = seed_lexicon();
    CHECK_NOTHROW(parse_sentence({"Main", "School", "jaata", "hu"}, lex));
    CHECK_NOTHROW(parse_sentence({"Mukesh", "ne", "khaana", "khaya"}, lex));
}

TEST_CASE("multimap surfaces keep file order") {
    const Lexicon lex = make_lexicon({"n", "o"}, {
                                                     {"bank", {"n"}},
                                                     {"bank", {"o"}},
                                                 });
    auto entries = lex.lookup("bank");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].entry_id == "bank#0");
    CHECK(entries[0].type.atoms == TypeSequence{{"n", 0}});
    CHECK(entries[1].entry_id == "bank#1");
    CHECK(entries[1].type.atoms == TypeSequence{{"o", 0}});
}

TEST_CASE("validation names the offending entry") {
    CHECK_THROWS_WITH_AS(make_lexicon({"n"}, {{"w", {}}}),
                         doctest::Contains("w#0"), LexiconError);
    CHECK_THROWS_WITH_AS(make_lexicon({"n"}, {{"w", {"k1.l"}}}),
                         doctest::Contains("undeclared symbol 'k1'"), LexiconError);
    CHECK_THROWS_AS(make_lexicon({"n"}, {{"two words", {"n"}}}), LexiconError);
    CHECK_THROWS_AS(make_lexicon({"n"}, {{"", {"n"}}}), LexiconError);
}

TEST_CASE("json round-trip") {
    const Lexicon seed = seed_lexicon();
    CHECK(lexicon_from_json(lexicon_to_json(seed)) == seed);

    const Lexicon custom = make_lexicon({"n", "k1"}, {{"ne", {"k1.l"}}, {"x", {"n", "n.r"}}});
    CHECK(lexicon_from_json(lexicon_to_json(custom)) == custom);
}

TEST_CASE("file loading matches the built-in seed") {
    const Lexicon from_file = load_lexicon(std::string(QNLP_DATA_DIR) + "/seed_lexicon.json");
    CHECK(from_file == seed_lexicon());
}

TEST_CASE("malformed files raise lexicon errors") {
    CHECK_THROWS_AS(lexicon_from_json("not json"), LexiconError);
    CHECK_THROWS_AS(lexicon_from_json("{}"), LexiconError);
    CHECK_THROWS_AS(lexicon_from_json(R"({"symbols": ["n"], "entries": [{"surface": "w"}]})"),
                    LexiconError);
    CHECK_THROWS_AS(load_lexicon("/nonexistent/lexicon.json"), std::ios_base::failure);
}

TEST_CASE("declared symbols admit the full notation table") {
    // p, a, rho, alpha are valid once declared, with no code changes.
    const Lexicon lex = make_lexicon({"p", "a", "rho", "alpha", "s"},
                                     {{"word", {"p", "a.l", "rho.r", "alpha"}}});
    CHECK(lex.lookup("word").size() == 1);
}
