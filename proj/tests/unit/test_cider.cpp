#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "support/files.hpp"
#include "support/oracles.hpp"
#include "tseval/cider.hpp"
#include "tseval/text_norm.hpp"

using namespace tseval;

namespace {

std::vector<CiderBreakdown> score_all(const std::vector<oracle::CiderItem>& items,
                                      const CiderOptions& options = {}) {
  std::vector<ReferenceSet> corpus;
  for (const auto& it : items) corpus.push_back(it.references);
  const auto idf = compute_idf(corpus);
  std::vector<CiderBreakdown> out;
  for (const auto& it : items) out.push_back(cider(it.candidate, it.references, idf, options));
  return out;
}

}  // namespace

TEST_CASE("compute_idf: examples") {
  const std::vector<ReferenceSet> one{{tokenize("the cat sat")}};
  const auto idf1 = compute_idf(one);
  CHECK(idf1.num_docs == 1);
  CHECK(idf1.document_frequency({"cat"}) == 1);
  CHECK(idf1.document_frequency({"the", "cat", "sat"}) == 1);

  const std::vector<ReferenceSet> three{{tokenize("the cat ran")},
                                        {tokenize("a dog"), tokenize("the cat the cat")},
                                        {tokenize("a bird")}};
  const auto idf3 = compute_idf(three);
  CHECK(idf3.document_frequency({"the", "cat"}) == 2);
  CHECK(idf3.document_frequency({"a"}) == 2);
  CHECK(idf3.document_frequency({"zebra"}) == 0);
  CHECK_THROWS_AS(compute_idf(std::vector<ReferenceSet>{}), std::invalid_argument);
}

TEST_CASE("tfidf_vector: examples") {
  const std::vector<ReferenceSet> two{{tokenize("red car")}, {tokenize("blue bus")}};
  const auto idf = compute_idf(two);
  const auto v = tfidf_vector(tokenize("red car"), 2, idf);
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v.at({"red", "car"}) - std::log(2.0)) < 1e-15);
  CHECK(tfidf_vector({}, 1, idf).empty());
  const std::vector<ReferenceSet> one{{tokenize("red car")}};
  for (const auto& [g, w] : tfidf_vector(tokenize("red car"), 1, compute_idf(one))) {
    CHECK(w == 0.0);
  }
}

TEST_CASE("cider: examples") {
  const std::vector<ReferenceSet> corpus{{tokenize("the car stopped at the light")},
                                         {tokenize("a dog barked")}};
  const auto idf = compute_idf(corpus);
  const auto same = cider(tokenize("the car stopped at the light"), corpus[0], idf, {1.0});
  for (const double p : same.per_n) CHECK(std::abs(p - 1.0) < 1e-12);
  CHECK(std::abs(same.score - 1.0) < 1e-12);
  CHECK(cider(tokenize("zebra crossing"), corpus[0], idf).score == 0.0);
  CHECK_THROWS_AS(cider(tokenize("x"), std::vector<TokenSequence>{}, idf), std::invalid_argument);
}

TEST_CASE("cider: single-document corpus scores 0") {
  const std::vector<ReferenceSet> corpus{{tokenize("the car stopped"), tokenize("a car stopped")}};
  const auto b = cider(tokenize("the car stopped"), corpus[0], compute_idf(corpus));
  CHECK(b.score == 0.0);
  for (const double p : b.per_n) CHECK(p == 0.0);
}

TEST_CASE("cider: bundled fixture matches the golden values") {
  const auto fixture = nlohmann::json::parse(testdata::read(testdata::path("cider_fixture.json")));
  const auto golden = nlohmann::json::parse(testdata::read(testdata::path("cider_golden.json")));
  std::vector<oracle::CiderItem> items;
  for (const auto& s : fixture.at("segments")) {
    oracle::CiderItem it{tokenize(s.at("candidate").get<std::string>()), {}};
    for (const auto& r : s.at("references"))
      it.references.push_back(tokenize(r.get<std::string>()));
    items.push_back(std::move(it));
  }
  const auto got = score_all(items, {golden.at("scale").get<double>()});
  const auto brute = oracle::cider_corpus(items, golden.at("scale").get<double>());
  REQUIRE(got.size() == golden.at("segments").size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& g = golden.at("segments")[i];
    CHECK(std::abs(got[i].score - g.at("score").get<double>()) < 1e-9);
    CHECK(std::abs(got[i].score - brute[i].second) < 1e-9);
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(std::abs(got[i].per_n[n] - g.at("per_n")[n].get<double>()) < 1e-9);
    }
  }
}

TEST_CASE("cider: random corpora against the brute-force oracle") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 400; ++iter) {
    std::uniform_int_distribution<int> segs(1, 5), refs(1, 3);
    std::vector<oracle::CiderItem> items(static_cast<std::size_t>(segs(rng)));
    for (auto& it : items) {
      it.candidate = oracle::random_tokens(rng, 12, 5);
      for (int r = refs(rng); r > 0; --r)
        it.references.push_back(oracle::random_tokens(rng, 12, 5));
    }
    const auto got = score_all(items);
    const auto want = oracle::cider_corpus(items, 10.0);
    for (std::size_t i = 0; i < items.size(); ++i) {
      CHECK(std::abs(got[i].score - want[i].second) < 1e-9);
      for (std::size_t n = 0; n < 4; ++n) {
        CHECK(got[i].per_n[n] >= 0.0);
        CHECK(got[i].per_n[n] <= 1.0);
        CHECK(std::abs(got[i].per_n[n] - want[i].first[n]) < 1e-9);
      }
      CHECK(got[i].score <= 10.0);
    }
    if (items.size() > 1) {
      // The idf does not depend on document order.
      auto reversed = items;
      std::reverse(reversed.begin(), reversed.end());
      const auto back = score_all(reversed);
      for (std::size_t i = 0; i < items.size(); ++i) {
        CHECK(back[items.size() - 1 - i].score == got[i].score);
      }
    }
  }
}

TEST_CASE("cider: length penalty only lowers the score") {
  const std::vector<ReferenceSet> corpus{{tokenize("the car stopped at the red light")},
                                         {tokenize("a dog barked")}};
  const auto idf = compute_idf(corpus);
  const auto cand = tokenize("the car stopped");
  const double plain = cider(cand, corpus[0], idf).score;
  CiderOptions lp;
  lp.length_penalty = true;
  const double pen = cider(cand, corpus[0], idf, lp).score;
  CHECK(pen <= plain);
  CHECK(std::abs(pen - plain * std::exp(-16.0 / 72.0)) < 1e-12);
}
