#include "tseval/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tseval {

void MeteorParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("meteor: alpha must be in (0,1)");
  if (!(beta > 0.0)) throw std::invalid_argument("meteor: beta must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("meteor: gamma must be in [0,1]");
  }
}

namespace {

constexpr int kNone = -1;

// Candidate and reference re-expressed over dense word ids.
struct MatchProblem {
  std::vector<int> cand_word;                 // word id per candidate position
  std::vector<std::vector<int>> ref_slots;    // reference positions per word id
  std::vector<std::size_t> cand_count;        // candidate occurrences per word id
  std::size_t ref_size = 0;
  std::size_t max_matches = 0;

  MatchProblem(const TokenSequence& cand, const TokenSequence& ref) : ref_size(ref.size()) {
    std::unordered_map<std::string_view, int> ids;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      auto [it, inserted] = ids.try_emplace(ref[j], static_cast<int>(ref_slots.size()));
      if (inserted) ref_slots.emplace_back();
      ref_slots[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(j));
    }
    cand_count.assign(ref_slots.size(), 0);
    cand_word.reserve(cand.size());
    for (const auto& tok : cand) {
      const auto it = ids.find(tok);
      const int w = it == ids.end() ? kNone : it->second;
      cand_word.push_back(w);
      if (w != kNone) ++cand_count[static_cast<std::size_t>(w)];
    }
    for (std::size_t w = 0; w < ref_slots.size(); ++w) {
      max_matches += std::min(cand_count[w], ref_slots[w].size());
    }
  }
};

// Depth-first search over candidate positions. Each position either takes an
// unused reference slot of its word or is skipped; skips are only allowed for
// words with more candidate than reference occurrences, so every leaf is a
// maximum-cardinality matching. Chunk counts never decrease along a path,
// which makes `chunks >= best` a sound cut.
class ChunkSearch {
 public:
  ChunkSearch(const MatchProblem& problem, std::size_t incumbent, std::size_t budget)
      : p_(problem),
        used_(problem.ref_size, false),
        used_per_word_(problem.ref_slots.size(), 0),
        skips_left_(problem.ref_slots.size(), 0),
        best_(incumbent),
        budget_(budget) {
    for (std::size_t w = 0; w < p_.ref_slots.size(); ++w) {
      const std::size_t rc = p_.ref_slots[w].size();
      skips_left_[w] = p_.cand_count[w] > rc ? p_.cand_count[w] - rc : 0;
    }
  }

  void run() { visit(0, kNone, 0); }
  std::size_t best() const { return best_; }
  bool complete() const { return !exhausted_; }

 private:
  void visit(std::size_t i, int prev_ref, std::size_t chunks) {
    if (exhausted_ || best_ <= 1) return;
    if (++expanded_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (chunks >= best_) return;
    if (i == p_.cand_word.size()) {
      best_ = chunks;
      return;
    }

    const int w = p_.cand_word[i];
    if (w == kNone) {
      visit(i + 1, kNone, chunks);
      return;
    }
    const auto wi = static_cast<std::size_t>(w);
    const auto& slots = p_.ref_slots[wi];

    if (used_per_word_[wi] < slots.size()) {
      // Extending the running chunk first finds good incumbents early.
      const int extend = prev_ref == kNone ? kNone : prev_ref + 1;
      if (extend != kNone && static_cast<std::size_t>(extend) < p_.ref_size &&
          !used_[static_cast<std::size_t>(extend)] &&
          std::binary_search(slots.begin(), slots.end(), extend)) {
        take(i, wi, extend, chunks);
      }
      for (const int j : slots) {
        if (j == extend || used_[static_cast<std::size_t>(j)]) continue;
        take(i, wi, j, chunks + 1);
      }
    }
    if (skips_left_[wi] > 0) {
      --skips_left_[wi];
      visit(i + 1, kNone, chunks);
      ++skips_left_[wi];
    }
  }

  void take(std::size_t i, std::size_t wi, int j, std::size_t chunks) {
    used_[static_cast<std::size_t>(j)] = true;
    ++used_per_word_[wi];
    visit(i + 1, j, chunks);
    --used_per_word_[wi];
    used_[static_cast<std::size_t>(j)] = false;
  }

  const MatchProblem& p_;
  std::vector<bool> used_;
  std::vector<std::size_t> used_per_word_;
  std::vector<std::size_t> skips_left_;
  std::size_t best_;
  std::size_t budget_;
  std::size_t expanded_ = 0;
  bool exhausted_ = false;
};

std::size_t greedy_chunks(const MatchProblem& p) {
  std::vector<bool> used(p.ref_size, false);
  std::vector<std::size_t> used_per_word(p.ref_slots.size(), 0);
  int prev = kNone;
  std::size_t chunks = 0;
  for (const int w : p.cand_word) {
    if (w == kNone) {
      prev = kNone;
      continue;
    }
    const auto wi = static_cast<std::size_t>(w);
    const auto& slots = p.ref_slots[wi];
    if (used_per_word[wi] == slots.size()) {
      prev = kNone;
      continue;
    }
    int pick = kNone;
    if (prev != kNone && static_cast<std::size_t>(prev + 1) < p.ref_size &&
        !used[static_cast<std::size_t>(prev + 1)] &&
        std::binary_search(slots.begin(), slots.end(), prev + 1)) {
      pick = prev + 1;
    } else {
      for (const int j : slots) {
        if (!used[static_cast<std::size_t>(j)]) {
          pick = j;
          break;
        }
      }
      ++chunks;
    }
    used[static_cast<std::size_t>(pick)] = true;
    ++used_per_word[wi];
    prev = pick;
  }
  return chunks;
}

MeteorAlignment base_alignment(const TokenSequence& cand, const TokenSequence& ref,
                               const MatchProblem& p) {
  MeteorAlignment a;
  a.candidate_total = cand.size();
  a.reference_total = ref.size();
  a.matches = p.max_matches;
  return a;
}

}  // namespace

MeteorAlignment align_greedy(const TokenSequence& candidate, const TokenSequence& reference) {
  const MatchProblem p(candidate, reference);
  MeteorAlignment a = base_alignment(candidate, reference, p);
  a.chunks = greedy_chunks(p);
  a.optimal = a.matches <= 1 || a.chunks == 1;
  return a;
}

MeteorAlignment align(const TokenSequence& candidate, const TokenSequence& reference,
                      std::size_t search_budget) {
  const MatchProblem p(candidate, reference);
  MeteorAlignment a = base_alignment(candidate, reference, p);
  if (p.max_matches == 0) return a;

  const std::size_t greedy = greedy_chunks(p);
  ChunkSearch search(p, greedy, search_budget);
  search.run();
  a.chunks = search.best();
  a.optimal = search.complete() || a.chunks == 1;
  return a;
}

MeteorBreakdown meteor_single(const TokenSequence& candidate, const TokenSequence& reference,
                              const MeteorParams& params) {
  MeteorBreakdown out;
  out.alignment = align(candidate, reference);
  const auto& a = out.alignment;
  if (a.matches == 0) return out;

  const double m = static_cast<double>(a.matches);
  out.precision = m / static_cast<double>(a.candidate_total);
  out.recall = m / static_cast<double>(a.reference_total);
  out.f_mean = out.precision * out.recall /
               (params.alpha * out.precision + (1.0 - params.alpha) * out.recall);
  out.penalty = params.gamma * std::pow(static_cast<double>(a.chunks) / m, params.beta);
  out.score = out.f_mean * (1.0 - out.penalty);
  return out;
}

MeteorBreakdown meteor(const TokenSequence& candidate, std::span<const TokenSequence> references,
                       const MeteorParams& params) {
  if (references.empty()) throw std::invalid_argument("meteor: empty reference list");
  params.validate();
  MeteorBreakdown best;
  bool first = true;
  for (const auto& ref : references) {
    MeteorBreakdown b = meteor_single(candidate, ref, params);
    if (first || b.score > best.score) {
      best = b;
      first = false;
    }
  }
  return best;
}

}  // namespace tseval
