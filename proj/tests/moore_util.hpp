#pragma once
// Reference machinery for exercising the generic Moore learner: a seeded
// random machine generator, an independent minimizer, and a brute-force
// equality oracle. Kept separate from the library on purpose so the tests
// do not certify the learner with the learner's own code.

#include <deque>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "qda/learner.hpp"

namespace moore_util {

using IntMachine = qda::MooreHypothesis<int>;

inline IntMachine random_machine(std::mt19937& rng, int max_states, int alphabet,
                                 int out_count) {
  std::uniform_int_distribution<int> nstates(1, max_states);
  int n = nstates(rng);
  std::uniform_int_distribution<int> state(0, n - 1);
  std::uniform_int_distribution<int> out(0, out_count - 1);
  IntMachine m;
  m.outputs.resize(n);
  m.next.assign(n, std::vector<int>(alphabet));
  for (int q = 0; q < n; ++q) {
    m.outputs[q] = out(rng);
    for (int a = 0; a < alphabet; ++a) m.next[q][a] = state(rng);
  }
  m.initial = state(rng);
  return m;
}

// reachable-part Moore minimization by partition refinement
inline IntMachine minimize_machine(const IntMachine& m) {
  int alphabet = m.next.empty() ? 0 : (int)m.next[0].size();
  std::vector<int> order, idx(m.outputs.size(), -1);
  idx[m.initial] = 0;
  order.push_back(m.initial);
  for (size_t i = 0; i < order.size(); ++i)
    for (int t : m.next[order[i]])
      if (idx[t] < 0) {
        idx[t] = (int)order.size();
        order.push_back(t);
      }

  size_t n = order.size();
  std::vector<int> block(n);
  {
    std::map<int, int> by_out;
    for (size_t i = 0; i < n; ++i)
      block[i] = by_out.emplace(m.outputs[order[i]], (int)by_out.size()).first->second;
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::vector<int>, int> sig_block;
    std::vector<int> nb(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<int> sig{block[i]};
      for (int a = 0; a < alphabet; ++a) sig.push_back(block[idx[m.next[order[i]][a]]]);
      nb[i] = sig_block.emplace(std::move(sig), (int)sig_block.size()).first->second;
    }
    if (nb != block) {
      block = nb;
      changed = true;
    }
  }

  int blocks = 0;
  for (int b : block) blocks = std::max(blocks, b + 1);
  IntMachine r;
  r.outputs.assign(blocks, 0);
  r.next.assign(blocks, std::vector<int>(alphabet, 0));
  for (size_t i = 0; i < n; ++i) {
    r.outputs[block[i]] = m.outputs[order[i]];
    for (int a = 0; a < alphabet; ++a) r.next[block[i]][a] = block[idx[m.next[order[i]][a]]];
  }
  r.initial = block[0];
  return r;
}

// shortest word on which the two machines disagree, if any (BFS over the product)
inline std::optional<std::vector<int>> first_difference(const IntMachine& a,
                                                        const IntMachine& b) {
  int alphabet = a.next.empty() ? 0 : (int)a.next[0].size();
  std::map<std::pair<int, int>, int> seen;
  std::vector<std::pair<int, int>> nodes{{a.initial, b.initial}};
  std::vector<std::pair<int, int>> parent{{-1, -1}}; // node, letter
  seen.emplace(nodes[0], 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [qa, qb] = nodes[i];
    if (a.outputs[qa] != b.outputs[qb]) {
      std::vector<int> w;
      for (int at = (int)i; parent[at].first >= 0; at = parent[at].first)
        w.push_back(parent[at].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int l = 0; l < alphabet; ++l) {
      std::pair<int, int> t{a.next[qa][l], b.next[qb][l]};
      if (seen.emplace(t, (int)nodes.size()).second) {
        nodes.push_back(t);
        parent.push_back({(int)i, l});
      }
    }
  }
  return std::nullopt;
}

// exact oracle over a fixed target
inline qda::MooreTeacher<int> exact_teacher(const IntMachine& target) {
  qda::MooreTeacher<int> t;
  t.alphabet_size = target.next.empty() ? 0 : (int)target.next[0].size();
  t.membership = [&target](const std::vector<int>& w) { return target.output_of(w); };
  t.equivalence = [&target](const IntMachine& h) { return first_difference(target, h); };
  return t;
}

// bijective state matching; meaningful on minimal machines
inline bool machines_isomorphic(const IntMachine& a, const IntMachine& b) {
  if (a.outputs.size() != b.outputs.size()) return false;
  int alphabet = a.next.empty() ? 0 : (int)a.next[0].size();
  std::vector<int> map_ab(a.outputs.size(), -1), map_ba(b.outputs.size(), -1);
  std::deque<std::pair<int, int>> work{{a.initial, b.initial}};
  map_ab[a.initial] = b.initial;
  map_ba[b.initial] = a.initial;
  while (!work.empty()) {
    auto [qa, qb] = work.front();
    work.pop_front();
    if (a.outputs[qa] != b.outputs[qb]) return false;
    for (int l = 0; l < alphabet; ++l) {
      int ta = a.next[qa][l], tb = b.next[qb][l];
      if (map_ab[ta] < 0 && map_ba[tb] < 0) {
        map_ab[ta] = tb;
        map_ba[tb] = ta;
        work.push_back({ta, tb});
      } else if (map_ab[ta] != tb) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace moore_util
