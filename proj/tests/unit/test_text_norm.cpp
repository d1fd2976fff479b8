#include <random>

#include "doctest.h"
#include "tseval/text_norm.hpp"

using tseval::PunctuationPolicy;
using tseval::tokenize;
using tseval::TokenizerConfig;
using tseval::TokenSequence;

namespace {

const TokenizerConfig kStrip{true, PunctuationPolicy::strip};

}  // namespace

TEST_CASE("tokenize: examples") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("The cat sat.") == TokenSequence{"the", "cat", "sat", "."});
  CHECK(tokenize("He wore a blue, hooded jacket", kStrip) ==
        TokenSequence{"he", "wore", "a", "blue", "hooded", "jacket"});
}

TEST_CASE("tokenize: punctuation set and separators") {
  CHECK(tokenize("(a)[b];c:d!e?\"f\"") == TokenSequence{"(", "a", ")", "[", "b", "]", ";", "c", ":",
                                                        "d", "!", "e", "?", "\"", "f", "\""});
  CHECK(tokenize("U.S.", kStrip) == TokenSequence{"u", "s"});
  // Characters outside the set stay inside tokens.
  CHECK(tokenize("10 km/h driver's") == TokenSequence{"10", "km/h", "driver's"});
  CHECK(tokenize("  \t\n ").empty());
  CHECK(tokenize("...", kStrip).empty());
}

TEST_CASE("tokenize: unicode whitespace separates, other code points untouched") {
  // U+00A0 no-break space, U+3000 ideographic space, U+2009 thin space.
  CHECK(tokenize("a\xC2\xA0"
                 "b\xE3\x80\x80"
                 "c\xE2\x80\x89"
                 "d") == TokenSequence{"a", "b", "c", "d"});
  // Non-ASCII letters are not lowercased.
  CHECK(tokenize("\xC3\x89T\xC3\x89") == TokenSequence{"\xC3\x89t\xC3\x89"});
  // Malformed bytes survive verbatim.
  CHECK(tokenize("x\xFFy z") == TokenSequence{"x\xFFy", "z"});
}

TEST_CASE("tokenize: lowercase can be disabled") {
  TokenizerConfig cfg;
  cfg.lowercase = false;
  CHECK(tokenize("The Car.", cfg) == TokenSequence{"The", "Car", "."});
}

TEST_CASE("tokenize: properties on random text") {
  std::mt19937_64 rng(7);
  const std::string alphabet[] = {"a",
                                  "B",
                                  "z",
                                  ".",
                                  ",",
                                  " ",
                                  "  ",
                                  "\t",
                                  "(",
                                  ")",
                                  "\"",
                                  "\xC2\xA0",
                                  "\xE2\x80\x83",
                                  "\xC3\xA9",
                                  "\xFF",
                                  "\xC2",
                                  "-",
                                  "'",
                                  "Q",
                                  "7",
                                  "\n"};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(alphabet) - 1);
  std::uniform_int_distribution<int> len(0, 30);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += alphabet[pick(rng)];
    for (const TokenizerConfig& cfg : {TokenizerConfig{}, kStrip}) {
      const TokenSequence t = tokenize(s, cfg);
      CAPTURE(s);
      CHECK(tokenize(tseval::join(t), cfg) == t);
      for (const auto& tok : t) {
        CHECK_FALSE(tok.empty());
        CHECK(tok.find_first_of(" \t\n") == std::string::npos);
      }
      std::string upper = s;
      for (auto& c : upper) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      }
      CHECK(tokenize(upper, cfg) == t);
    }
    // strip == separate minus the punctuation tokens.
    TokenSequence expected;
    for (const auto& tok : tokenize(s)) {
      if (!(tok.size() == 1 && tseval::is_split_punctuation(tok[0]))) expected.push_back(tok);
    }
    CHECK(tokenize(s, kStrip) == expected);
  }
}
