#pragma once

// Consensus caption scoring over corpus TF-IDF n-gram vectors.
//
// Usage is two-phase: build a CiderCorpusIdf once over every reference set of
// the evaluation corpus, then score any number of candidates against it. The
// idf object is immutable after construction and may be read concurrently.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "tseval/ngram.hpp"
#include "tseval/text_norm.hpp"

namespace tseval {

using ReferenceSet = std::vector<TokenSequence>;

struct CiderCorpusIdf {
  std::size_t num_docs = 0;
  /// Per order (index n-1): n-gram -> number of reference sets containing it.
  std::array<std::map<NGram, std::size_t>, kMaxNGramOrder> df;

  /// Document frequency, 0 when the n-gram never occurs in the corpus.
  std::size_t document_frequency(const NGram& gram) const;
};

using SparseVector = std::map<NGram, double>;

struct CiderOptions {
  double scale = 10.0;
  /// Multiplies each cosine by exp(-(len_c - len_ref)^2 / (2 sigma^2)),
  /// as in CIDEr-D. Off by default.
  bool length_penalty = false;
  double sigma = 6.0;
};

struct CiderBreakdown {
  std::array<double, kMaxNGramOrder> per_n{};
  double score = 0.0;
};

/// Throws std::invalid_argument for an empty corpus.
CiderCorpusIdf compute_idf(std::span<const ReferenceSet> corpus);

/// weight(g) = tf(g) * ln(num_docs / max(df(g), 1)), tf normalized by the
/// caption's n-gram total. Throws std::invalid_argument unless 1 <= n <= 4.
SparseVector tfidf_vector(const TokenSequence& caption, int n, const CiderCorpusIdf& idf);

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(const SparseVector& a, const SparseVector& b);

/// Throws std::invalid_argument for an empty reference list.
CiderBreakdown cider(const TokenSequence& candidate, std::span<const TokenSequence> references,
                     const CiderCorpusIdf& idf, const CiderOptions& options = {});

}  // namespace tseval
