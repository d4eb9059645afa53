#include "qda/elastic.hpp"

#include <map>
#include <set>

namespace qda {

bool is_elastic(const Qda& a) {
  Letter b = blank_letter();
  for (size_t i = 0; i < a.states.size(); ++i) {
    auto it = a.states[i].next.find(b);
    if (it != a.states[i].next.end() && it->second != (int)i) return false;
  }
  return true;
}

namespace {

std::vector<int> blank_closure(const Qda& a, std::vector<int> set) {
  Letter b = blank_letter();
  std::set<int> seen(set.begin(), set.end());
  std::vector<int> work = set;
  while (!work.empty()) {
    int q = work.back();
    work.pop_back();
    auto it = a.states[q].next.find(b);
    if (it != a.states[q].next.end() && seen.insert(it->second).second)
      work.push_back(it->second);
  }
  return {seen.begin(), seen.end()};
}

} // namespace

ElasticQda elastify(const Qda& a) {
  Letter bl = blank_letter();
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = index.emplace(s, (int)sets.size());
    if (fresh) sets.push_back(s);
    return it->second;
  };

  Qda e;
  e.session = a.session;
  intern(blank_closure(a, {a.initial}));
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<int> cur = sets[i];
    // collect the non-blank letters any member can read
    std::set<Letter> letters;
    bool blank_defined = false;
    for (int q : cur) {
      for (const auto& [l, t] : a.states[q].next) {
        if (is_blank(l))
          blank_defined = true;
        else
          letters.insert(l);
      }
    }
    e.states.resize(sets.size());
    for (const Letter& l : letters) {
      std::set<int> targets;
      for (int q : cur) {
        auto it = a.states[q].next.find(l);
        if (it != a.states[q].next.end()) targets.insert(it->second);
      }
      int j = intern(blank_closure(a, {targets.begin(), targets.end()}));
      e.states.resize(sets.size());
      e.states[i].next[l] = j;
    }
    if (blank_defined) e.states[i].next[bl] = (int)i;
  }
  e.states.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    DataFormula out = DataFormula::bottom(a.session->universe);
    for (int q : sets[i]) out = DataFormula::join(out, a.states[q].out);
    e.states[i].out = out;
  }
  e.initial = 0;
  return {minimize(e)};
}

}  // namespace qda
