#include <catch2/catch_amalgamated.hpp>

#include "maplink/text.hpp"

using namespace maplink::text;

TEST_CASE("fold lowercases across the supported scripts", "[text]") {
    CHECK(fold("QUEENS") == "queens");
    CHECK(fold("Sault Ste. Marie") == "sault ste. marie");
    CHECK(fold("ÉTANG") == "étang");            // É -> é
    CHECK(fold("Łódź") == "łódź");  // Łódź -> łódź
    CHECK(fold("ΔΕΛΤΑ") == "δελτα");  // ΔΕΛΤΑ
    CHECK(fold("ΟΔΟΣ") == fold("οδος"));  // final sigma folds with Σ
    CHECK(fold("МОСКВА") == "москва");  // МОСКВА
    CHECK(fold("1852") == "1852");
}

TEST_CASE("fold is idempotent", "[text]") {
    for (const char* s : {"QUEENS", "Gt.", "ÉTANG", "ΔΣ", "Яр"}) {
        CHECK(fold(fold(s)) == fold(s));
    }
}

TEST_CASE("codepoint_count counts codepoints, not bytes", "[text]") {
    CHECK(codepoint_count("Dakota") == 6);
    CHECK(codepoint_count("Münster") == 7);
    CHECK(codepoint_count("ΟΔΟΣ") == 4);
    CHECK(codepoint_count("") == 0);
}

TEST_CASE("lenient decoding keeps malformed bytes", "[text]") {
    std::string bad = "a\xFF""b";
    CHECK(codepoint_count(bad) == 3);
    CHECK(fold(bad).size() >= 3);  // stray byte re-encodes, never throws
}

TEST_CASE("trim strips ASCII whitespace only at the ends", "[text]") {
    CHECK(trim("  North \t\n") == "North");
    CHECK(trim("North Dakota") == "North Dakota");
    CHECK(trim(" \t ") == "");
}

TEST_CASE("strip_affix_punct removes edge punctuation and keeps interior marks", "[text]") {
    CHECK(strip_affix_punct("Ste.") == "Ste");
    CHECK(strip_affix_punct("\"Marie,\"") == "Marie");
    CHECK(strip_affix_punct("Mary's") == "Mary's");
    CHECK(strip_affix_punct("(1852)") == "1852");
    CHECK(strip_affix_punct("...") == "");
    CHECK(strip_affix_punct("«Baden»") == "Baden");  // guillemets
}

TEST_CASE("split_words splits on runs of whitespace", "[text]") {
    auto w = split_words("  Sault  Ste.\tMarie ");
    REQUIRE(w.size() == 3);
    CHECK(w[0] == "Sault");
    CHECK(w[1] == "Ste.");
    CHECK(w[2] == "Marie");
    CHECK(split_words("   ").empty());
    CHECK(split_words("one").size() == 1);
}

TEST_CASE("case predicates agree on cased, caseless, and digit codepoints", "[text]") {
    CHECK(is_upper(U'Q'));
    CHECK(is_lower(U'q'));
    CHECK_FALSE(is_cased(U'5'));
    CHECK_FALSE(is_cased(U'.'));
    CHECK(is_cased(0x00C9));  // É
    CHECK(is_cased(0x03A3));  // Σ
    CHECK(is_cased(0x042F));  // Я
    CHECK(is_digit(U'0'));
    CHECK_FALSE(is_digit(U'x'));
}
