#pragma once
// Observation-table learning of deterministic Moore machines over an
// integer-indexed alphabet, generic in the output type. Counterexamples are
// processed by inserting all their prefixes into the row set.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qda {

template <typename Output>
struct MooreHypothesis {
  std::vector<Output> outputs;          // per state
  std::vector<std::vector<int>> next;   // [state][letter]
  int initial = 0;

  const Output& output_of(const std::vector<int>& word) const {
    int q = initial;
    for (int a : word) q = next[q][a];
    return outputs[q];
  }
};

struct LearnStats {
  long membership_queries = 0; // distinct words asked
  long equivalence_queries = 0;
  size_t longest_counterexample = 0;
};

template <typename Output>
struct MooreTeacher {
  int alphabet_size = 0;
  std::function<Output(const std::vector<int>&)> membership;
  std::function<std::optional<std::vector<int>>(const MooreHypothesis<Output>&)> equivalence;
};

template <typename Output>
MooreHypothesis<Output> learn_moore(const MooreTeacher<Output>& teacher, LearnStats* stats_out) {
  using Word = std::vector<int>;
  LearnStats stats;

  std::map<Word, Output> cache;
  auto ask = [&](const Word& w) -> const Output& {
    auto it = cache.find(w);
    if (it == cache.end()) {
      ++stats.membership_queries;
      it = cache.emplace(w, teacher.membership(w)).first;
    }
    return it->second;
  };

  // outputs are interned so rows can be compared as integer vectors
  std::vector<Output> pool;
  auto intern = [&](const Output& o) {
    for (size_t i = 0; i < pool.size(); ++i)
      if (pool[i] == o) return (int)i;
    pool.push_back(o);
    return (int)pool.size() - 1;
  };

  std::vector<Word> S{Word{}};
  std::vector<Word> E{Word{}};
  std::map<Word, int> in_S{{Word{}, 0}};

  auto concat = [](const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
  };
  auto row_of = [&](const Word& s) {
    std::vector<int> row(E.size());
    for (size_t e = 0; e < E.size(); ++e) row[e] = intern(ask(concat(s, E[e])));
    return row;
  };
  auto add_to_S = [&](const Word& w) {
    if (in_S.count(w)) return false;
    in_S.emplace(w, (int)S.size());
    S.push_back(w);
    return true;
  };

  while (true) {
    // close and make consistent
    bool dirty = true;
    while (dirty) {
      dirty = false;
      std::map<std::vector<int>, int> rows; // row -> index of first S word
      std::vector<std::vector<int>> srows(S.size());
      for (size_t i = 0; i < S.size(); ++i) {
        srows[i] = row_of(S[i]);
        rows.emplace(srows[i], (int)i);
      }
      // closedness: every one-letter extension's row appears in S
      for (size_t i = 0; i < S.size() && !dirty; ++i) {
        for (int a = 0; a < teacher.alphabet_size && !dirty; ++a) {
          Word sa = concat(S[i], {a});
          if (in_S.count(sa)) continue;
          if (!rows.count(row_of(sa))) {
            add_to_S(sa);
            dirty = true;
          }
        }
      }
      if (dirty) continue;
      // consistency: equal rows must stay equal under every letter
      for (size_t i = 0; i < S.size() && !dirty; ++i) {
        for (size_t j = i + 1; j < S.size() && !dirty; ++j) {
          if (srows[i] != srows[j]) continue;
          for (int a = 0; a < teacher.alphabet_size && !dirty; ++a) {
            Word ia = concat(S[i], {a});
            Word ja = concat(S[j], {a});
            for (size_t e = 0; e < E.size(); ++e) {
              if (!(ask(concat(ia, E[e])) == ask(concat(ja, E[e])))) {
                Word ae = concat({a}, E[e]);
                E.push_back(ae);
                dirty = true;
                break;
              }
            }
          }
        }
      }
    }

    // hypothesis from distinct rows, in first-occurrence order
    std::map<std::vector<int>, int> row_state;
    std::vector<int> srow_state(S.size());
    std::vector<int> state_rep;
    for (size_t i = 0; i < S.size(); ++i) {
      auto row = row_of(S[i]);
      auto [it, fresh] = row_state.emplace(row, (int)row_state.size());
      if (fresh) state_rep.push_back((int)i);
      srow_state[i] = it->second;
    }
    MooreHypothesis<Output> h;
    h.outputs.resize(state_rep.size());
    h.next.assign(state_rep.size(), std::vector<int>(teacher.alphabet_size, 0));
    for (size_t q = 0; q < state_rep.size(); ++q) {
      const Word& s = S[state_rep[q]];
      h.outputs[q] = ask(s);
      for (int a = 0; a < teacher.alphabet_size; ++a) {
        auto row = row_of(concat(s, {a}));
        auto it = row_state.find(row);
        // closedness guarantees presence
        h.next[q][a] = it->second;
      }
    }
    h.initial = srow_state[in_S.at(Word{})];

    ++stats.equivalence_queries;
    auto cex = teacher.equivalence(h);
    if (!cex) {
      if (stats_out) *stats_out = stats;
      return h;
    }
    if (ask(*cex) == h.output_of(*cex))
      throw std::runtime_error("equivalence oracle returned a word the hypothesis already gets right");
    stats.longest_counterexample = std::max(stats.longest_counterexample, cex->size());
    for (size_t len = 1; len <= cex->size(); ++len)
      add_to_S(Word(cex->begin(), cex->begin() + len));
  }
}

}  // namespace qda
