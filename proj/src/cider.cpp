#include "tseval/cider.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tseval {

std::size_t CiderCorpusIdf::document_frequency(const NGram& gram) const {
  if (gram.empty() || gram.size() > df.size()) return 0;
  const auto& table = df[gram.size() - 1];
  const auto it = table.find(gram);
  return it == table.end() ? 0 : it->second;
}

CiderCorpusIdf compute_idf(std::span<const ReferenceSet> corpus) {
  if (corpus.empty()) throw std::invalid_argument("compute_idf: empty corpus");
  CiderCorpusIdf idf;
  idf.num_docs = corpus.size();
  for (const auto& refs : corpus) {
    for (int n = 1; n <= kMaxNGramOrder; ++n) {
      std::set<NGram> present;
      for (const auto& ref : refs) {
        for (auto& [gram, c] : extract_ngrams(ref, n).counts) present.insert(gram);
      }
      auto& table = idf.df[static_cast<std::size_t>(n - 1)];
      for (const auto& gram : present) ++table[gram];
    }
  }
  return idf;
}

SparseVector tfidf_vector(const TokenSequence& caption, int n, const CiderCorpusIdf& idf) {
  const NGramCounts counts = extract_ngrams(caption, n);
  SparseVector out;
  const std::size_t total = counts.total();
  if (total == 0) return out;
  const double docs = static_cast<double>(idf.num_docs);
  for (const auto& [gram, c] : counts.counts) {
    const std::size_t df = std::max<std::size_t>(idf.document_frequency(gram), 1);
    const double tf = static_cast<double>(c) / static_cast<double>(total);
    out.emplace(gram, tf * std::log(docs / static_cast<double>(df)));
  }
  return out;
}

namespace {

double norm(const SparseVector& v) {
  double sq = 0.0;
  for (const auto& [gram, w] : v) sq += w * w;
  return std::sqrt(sq);
}

}  // namespace

double cosine(const SparseVector& a, const SparseVector& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = 0.0;
  for (const auto& [gram, w] : a) {
    const auto it = b.find(gram);
    if (it != b.end()) dot += w * it->second;
  }
  // Rounding can push the ratio a hair past 1 for parallel vectors.
  return std::min(1.0, dot / (na * nb));
}

CiderBreakdown cider(const TokenSequence& candidate, std::span<const TokenSequence> references,
                     const CiderCorpusIdf& idf, const CiderOptions& options) {
  if (references.empty()) throw std::invalid_argument("cider: empty reference list");
  CiderBreakdown out;
  const double m = static_cast<double>(references.size());
  for (int n = 1; n <= kMaxNGramOrder; ++n) {
    const SparseVector vc = tfidf_vector(candidate, n, idf);
    double sum = 0.0;
    for (const auto& ref : references) {
      double sim = cosine(vc, tfidf_vector(ref, n, idf));
      if (options.length_penalty) {
        const double delta =
            static_cast<double>(candidate.size()) - static_cast<double>(ref.size());
        sim *= std::exp(-(delta * delta) / (2.0 * options.sigma * options.sigma));
      }
      sum += sim;
    }
    out.per_n[static_cast<std::size_t>(n - 1)] = sum / m;
  }
  double total = 0.0;
  for (const double v : out.per_n) total += v;
  out.score = options.scale * total / static_cast<double>(kMaxNGramOrder);
  return out;
}

}  // namespace tseval
