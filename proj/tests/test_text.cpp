#include <doctest.h>

#include <random>

#include "ontoclass/text.hpp"

using namespace ontoclass;

TEST_CASE("tokenize: empty text") { CHECK(tokenize("").empty()); }

TEST_CASE("tokenize: punctuation and case normalization") {
    CHECK(tokenize("Virus, virus; VIRUS.") == TokenStream{"virus", "virus", "virus"});
}

TEST_CASE("tokenize: hyphen splits") {
    CHECK(tokenize("maladies cardio-vasculaires") ==
          TokenStream{"maladies", "cardio", "vasculaires"});
}

TEST_CASE("tokenize: accents strip to ASCII base letters") {
    CHECK(tokenize("Hôpital Général, zèbre, cœur, Août") ==
          TokenStream{"hopital", "general", "zebre", "coeur", "aout"});
}

TEST_CASE("tokenize: digits kept, typographic punctuation separates") {
    CHECK(tokenize("h1n1 2010") == TokenStream{"h1n1", "2010"});
    CHECK(tokenize("l’hôpital « test »") ==
          TokenStream{"l", "hopital", "test"});
}

TEST_CASE("tokenize: invalid UTF-8 bytes separate") {
    std::string broken = "ab\xFF"
                         "cd";
    CHECK(tokenize(broken) == TokenStream{"ab", "cd"});
}

TEST_CASE("tokenize: normalization is idempotent") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "aàbcçdeéêfgh '-;ÉÀŒ“”0719checkß";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        for (int i = 0; i < 40; ++i) text += alphabet[rng() % alphabet.size()];
        TokenStream once = tokenize(text);
        TokenStream again = tokenize(join_tokens(once, 0, once.size()));
        CHECK(once == again);
    }
}

TEST_CASE("normalize_surface joins with single spaces") {
    CHECK(normalize_surface("  Infections,\tBacterial ") == "infections bacterial");
}
