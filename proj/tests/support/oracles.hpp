#pragma once

// Brute-force reference computations for tests. Nothing here calls into the
// library's metric code: n-grams are joined strings in hash maps, alignments
// and subsequences are enumerated outright.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

inline std::unordered_map<std::string, int> ngram_counts(const Tokens& t, int n) {
  std::unordered_map<std::string, int> out;
  for (int i = 0; i + n <= static_cast<int>(t.size()); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += t[static_cast<std::size_t>(i + k)];
    }
    ++out[key];
  }
  return out;
}

// Longest common subsequence by enumerating every subsequence of x.
inline std::size_t lcs_enumerate(const Tokens& x, const Tokens& y) {
  std::size_t best = 0;
  const std::size_t subsets = std::size_t{1} << x.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::size_t len = 0;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      while (j < y.size() && y[j] != x[i]) ++j;
      if (j == y.size()) {
        ok = false;
      } else {
        ++j;
        ++len;
      }
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

struct Alignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::size_t alternatives = 0;  // number of maximum-cardinality matchings
};

inline std::size_t chunks_of(std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::size_t ch = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k == 0 || pairs[k].first != pairs[k - 1].first + 1 ||
        pairs[k].second != pairs[k - 1].second + 1) {
      ++ch;
    }
  }
  return ch;
}

// Enumerates every maximum-cardinality exact matching: per word type, every
// injective map from the smaller occurrence list into the larger one.
inline Alignment align_enumerate(const Tokens& cand, const Tokens& ref) {
  std::set<std::string> words;
  for (const auto& w : cand) {
    if (std::find(ref.begin(), ref.end(), w) != ref.end()) words.insert(w);
  }
  std::vector<std::vector<std::vector<std::pair<int, int>>>> per_word;
  for (const auto& w : words) {
    std::vector<int> cp, rp;
    for (int i = 0; i < static_cast<int>(cand.size()); ++i) {
      if (cand[static_cast<std::size_t>(i)] == w) cp.push_back(i);
    }
    for (int j = 0; j < static_cast<int>(ref.size()); ++j) {
      if (ref[static_cast<std::size_t>(j)] == w) rp.push_back(j);
    }
    const bool cand_small = cp.size() <= rp.size();
    const std::vector<int>& small = cand_small ? cp : rp;
    const std::vector<int>& large = cand_small ? rp : cp;
    std::vector<std::vector<std::pair<int, int>>> options;
    std::vector<int> pick;
    std::vector<bool> used(large.size(), false);
    std::function<void()> rec = [&] {
      if (pick.size() == small.size()) {
        std::vector<std::pair<int, int>> m;
        for (std::size_t k = 0; k < small.size(); ++k) {
          m.push_back(cand_small ? std::pair{small[k], pick[k]} : std::pair{pick[k], small[k]});
        }
        options.push_back(std::move(m));
        return;
      }
      for (std::size_t k = 0; k < large.size(); ++k) {
        if (used[k]) continue;
        used[k] = true;
        pick.push_back(large[k]);
        rec();
        pick.pop_back();
        used[k] = false;
      }
    };
    rec();
    per_word.push_back(std::move(options));
  }

  Alignment best;
  best.chunks = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<int, int>> current;
  std::function<void(std::size_t)> combine = [&](std::size_t w) {
    if (w == per_word.size()) {
      ++best.alternatives;
      best.matches = current.size();
      best.chunks = std::min(best.chunks, chunks_of(current));
      return;
    }
    for (const auto& opt : per_word[w]) {
      current.insert(current.end(), opt.begin(), opt.end());
      combine(w + 1);
      current.resize(current.size() - opt.size());
    }
  };
  combine(0);
  if (best.matches == 0) best.chunks = 0;
  return best;
}

inline double meteor_score(const Tokens& cand, const Tokens& ref, double alpha = 0.9,
                           double beta = 3.0, double gamma = 0.5) {
  const Alignment a = align_enumerate(cand, ref);
  if (a.matches == 0) return 0.0;
  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(cand.size());
  const double r = m / static_cast<double>(ref.size());
  const double f = p * r / (alpha * p + (1 - alpha) * r);
  return f * (1 - gamma * std::pow(static_cast<double>(a.chunks) / m, beta));
}

struct CiderItem {
  Tokens candidate;
  std::vector<Tokens> references;
};

// Per item: per-order CIDEr values and the scaled mean, idf over all items.
inline std::vector<std::pair<std::vector<double>, double>> cider_corpus(
    const std::vector<CiderItem>& items, double scale) {
  const double docs = static_cast<double>(items.size());
  std::unordered_map<std::string, int> df;
  for (const auto& it : items) {
    std::set<std::string> seen;
    for (const auto& r : it.references) {
      for (int n = 1; n <= 4; ++n) {
        for (const auto& [g, c] : ngram_counts(r, n)) seen.insert(std::to_string(n) + ":" + g);
      }
    }
    for (const auto& g : seen) ++df[g];
  }
  auto vec = [&](const Tokens& t, int n) {
    std::unordered_map<std::string, double> v;
    const auto counts = ngram_counts(t, n);
    double total = 0;
    for (const auto& [g, c] : counts) total += c;
    for (const auto& [g, c] : counts) {
      const auto it = df.find(std::to_string(n) + ":" + g);
      const double d = it == df.end() ? 1.0 : it->second;
      v[g] = (c / total) * std::log(docs / d);
    }
    return v;
  };
  auto cos = [](const std::unordered_map<std::string, double>& a,
                const std::unordered_map<std::string, double>& b) {
    double na = 0, nb = 0, dot = 0;
    for (const auto& [g, w] : a) na += w * w;
    for (const auto& [g, w] : b) nb += w * w;
    if (na == 0 || nb == 0) return 0.0;
    for (const auto& [g, w] : a) {
      const auto it = b.find(g);
      if (it != b.end()) dot += w * it->second;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
  };
  std::vector<std::pair<std::vector<double>, double>> out;
  for (const auto& it : items) {
    std::vector<double> per_n;
    for (int n = 1; n <= 4; ++n) {
      const auto vc = vec(it.candidate, n);
      double s = 0;
      for (const auto& r : it.references) s += cos(vc, vec(r, n));
      per_n.push_back(s / static_cast<double>(it.references.size()));
    }
    out.emplace_back(per_n, scale * (per_n[0] + per_n[1] + per_n[2] + per_n[3]) / 4);
  }
  return out;
}

// Row-major dense product, a is n x k, b is k x m.
inline std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b, int n,
                                  int k, int m) {
  std::vector<double> c(static_cast<std::size_t>(n * m), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int t = 0; t < k; ++t) {
        s += a[static_cast<std::size_t>(i * k + t)] * b[static_cast<std::size_t>(t * m + j)];
      }
      c[static_cast<std::size_t>(i * m + j)] = s;
    }
  }
  return c;
}

// Random token sequence over a vocabulary of `vocab` single-letter words.
inline Tokens random_tokens(std::mt19937_64& rng, std::size_t max_len, int vocab,
                            std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> word(0, vocab - 1);
  Tokens t(len(rng));
  for (auto& w : t) w = std::string(1, static_cast<char>('a' + word(rng)));
  return t;
}

}  // namespace oracle
