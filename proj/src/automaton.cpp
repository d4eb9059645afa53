#include "qda/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qda {

std::optional<int> Qda::run(const SymbolicWord& w) const {
  int q = initial;
  for (const Letter& l : w) {
    auto it = states[q].next.find(l);
    if (it == states[q].next.end()) return std::nullopt;
    q = it->second;
  }
  return q;
}

DataFormula Qda::output_of(const SymbolicWord& w) const {
  auto q = run(w);
  if (!q) return DataFormula::bottom(session->universe);
  return states[*q].out;
}

bool Qda::accepts_valuation(const ValuationWord& v,
                            const std::vector<int>* scalars) const {
  auto q = run(symbolic_of(v));
  if (!q) return false;
  const DataFormula& f = states[*q].out;
  if (f.is_bottom()) return false;
  if (f.is_top()) return true;
  const auto& u = *session->universe;
  std::vector<int> values(u.terms.size(), 0);
  std::vector<int> y_pos(session->y_count, -1);
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i].letter.y >= 0) y_pos[v[i].letter.y] = (int)i;
  for (size_t t = 0; t < u.terms.size(); ++t) {
    const Term& term = u.terms[t];
    if (term.kind == Term::Kind::Register) {
      if (y_pos[term.var] < 0) throw std::runtime_error("valuation word misses a variable");
      values[t] = v[y_pos[term.var]].data[term.comp];
    } else {
      if (!session->scalar_cells) {
        if (!scalars || term.scalar >= (int)scalars->size())
          throw std::runtime_error(
              "session carries no scalar cells; pass the scalar environment");
        values[t] = (*scalars)[term.scalar];
        continue;
      }
      uint32_t bit = session->scalar_bit(term.scalar);
      int pos = -1;
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i].letter.ptrs & bit) pos = (int)i;
      if (pos < 0) throw std::runtime_error("word misses a scalar cell");
      values[t] = v[pos].data[0];
    }
  }
  return f.eval(values);
}

bool Qda::accepts(const DataWord& w, const std::vector<int>* scalars) const {
  for (const auto& placement : structure_valuations(*session, w, session->y_count))
    if (!accepts_valuation(apply_valuation(w, placement), scalars)) return false;
  return true; // vacuously true when no placement exists
}

std::vector<Letter> Qda::alphabet() const {
  std::set<Letter> ls;
  ls.insert(blank_letter());
  for (const State& st : states)
    for (const auto& [l, t] : st.next) ls.insert(l);
  return {ls.begin(), ls.end()};
}

size_t Qda::transition_count() const {
  size_t n = 0;
  for (const State& st : states) n += st.next.size();
  return n;
}

namespace {

// breadth-first renumbering over sorted letters; canonical state order
Qda renumber_bfs(const Qda& a) {
  std::vector<int> order(a.states.size(), -1);
  std::vector<int> bfs;
  order[a.initial] = 0;
  bfs.push_back(a.initial);
  for (size_t i = 0; i < bfs.size(); ++i) {
    for (const auto& [l, t] : a.states[bfs[i]].next) {
      if (order[t] < 0) {
        order[t] = (int)bfs.size();
        bfs.push_back(t);
      }
    }
  }
  Qda r;
  r.session = a.session;
  r.initial = 0;
  r.states.resize(bfs.size());
  for (size_t i = 0; i < bfs.size(); ++i) {
    const auto& src = a.states[bfs[i]];
    r.states[i].out = src.out;
    for (const auto& [l, t] : src.next)
      if (order[t] >= 0) r.states[i].next[l] = order[t];
  }
  return r;
}

} // namespace

Qda minimize(const Qda& a) {
  // reachable states only
  std::vector<int> reach(a.states.size(), -1);
  std::vector<int> order;
  reach[a.initial] = 0;
  order.push_back(a.initial);
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto& [l, t] : a.states[order[i]].next)
      if (reach[t] < 0) {
        reach[t] = (int)order.size();
        order.push_back(t);
      }

  std::vector<Letter> alpha = a.alphabet();
  size_t n = order.size();
  int sink = (int)n;
  // dense transition table over reachable states plus an explicit sink
  std::vector<std::vector<int>> next(n + 1, std::vector<int>(alpha.size(), sink));
  for (size_t i = 0; i < n; ++i) {
    const auto& st = a.states[order[i]];
    for (size_t li = 0; li < alpha.size(); ++li) {
      auto it = st.next.find(alpha[li]);
      if (it != st.next.end()) next[i][li] = reach[it->second];
    }
  }

  DataFormula bot = DataFormula::bottom(a.session->universe);
  auto out_of = [&](int i) -> const DataFormula& {
    return i == sink ? bot : a.states[order[i]].out;
  };

  // partition refinement on the completed machine
  std::vector<int> block(n + 1, -1);
  {
    std::vector<DataFormula> reps;
    for (size_t i = 0; i <= n; ++i) {
      for (size_t r = 0; r < reps.size(); ++r)
        if (reps[r] == out_of((int)i)) {
          block[i] = (int)r;
          break;
        }
      if (block[i] < 0) {
        block[i] = (int)reps.size();
        reps.push_back(out_of((int)i));
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> newblock(n + 1, -1);
    for (size_t i = 0; i <= n; ++i) {
      std::vector<int> sig;
      sig.reserve(alpha.size() + 1);
      sig.push_back(block[i]);
      for (size_t li = 0; li < alpha.size(); ++li) sig.push_back(block[next[i][li]]);
      auto [it, fresh] = sig_to_block.emplace(std::move(sig), (int)sig_to_block.size());
      newblock[i] = it->second;
      (void)fresh;
    }
    if (newblock != block) {
      block = std::move(newblock);
      changed = true;
    }
    if ((size_t)*std::max_element(block.begin(), block.end()) + 1 == n + 1) break;
  }

  int sink_block = block[sink];
  if (block[0] == sink_block) {
    // the whole language is bottom
    Qda r;
    r.session = a.session;
    r.states.push_back({bot, {}});
    r.initial = 0;
    return r;
  }

  int nblocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> rep(nblocks, -1);
  for (size_t i = 0; i <= n; ++i)
    if (rep[block[i]] < 0) rep[block[i]] = (int)i;

  Qda q;
  q.session = a.session;
  q.states.resize(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    q.states[b].out = out_of(rep[b]);
    if (b == sink_block) continue;
    for (size_t li = 0; li < alpha.size(); ++li) {
      int t = block[next[rep[b]][li]];
      if (t != sink_block) q.states[b].next[alpha[li]] = t;
    }
  }
  q.initial = block[0];

  // drop the sink block and renumber canonically
  Qda trimmed = renumber_bfs(q);
  // renumber_bfs keeps only reachable blocks; the sink block had no outgoing
  // edges pointing at it anymore, so it vanished unless it is genuinely live
  return trimmed;
}

Qda normalize_for_language(const Qda& a) {
  uint32_t full_y = (1u << a.session->y_count) - 1u;
  uint32_t req = a.session->required_mask();
  std::map<std::tuple<int, uint32_t, uint32_t>, int> index;
  std::vector<std::tuple<int, uint32_t, uint32_t>> nodes;
  auto intern = [&](int st, uint32_t pm, uint32_t ym) {
    auto key = std::make_tuple(st, pm, ym);
    auto [it, fresh] = index.emplace(key, (int)nodes.size());
    if (fresh) nodes.push_back(key);
    return it->second;
  };
  Qda r;
  r.session = a.session;
  intern(a.initial, 0, 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [st, pm, ym] = nodes[i];
    r.states.resize(nodes.size());
    for (const auto& [l, t] : a.states[st].next) {
      if (l.ptrs & pm) continue;
      if (l.y >= 0 && (ym & (1u << l.y))) continue;
      uint32_t pm2 = pm | l.ptrs;
      uint32_t ym2 = ym | (l.y >= 0 ? (1u << l.y) : 0);
      int j = intern(t, pm2, ym2);
      r.states.resize(nodes.size());
      r.states[i].next[l] = j;
    }
  }
  r.states.resize(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [st, pm, ym] = nodes[i];
    bool complete = pm == req && ym == full_y;
    r.states[i].out =
        complete ? a.states[st].out : DataFormula::bottom(a.session->universe);
  }
  r.initial = 0;
  return r;
}

namespace {

// Tracks where a word prefix sits inside a well-formed configuration
// encoding: the nil cell, then scalar cells in declaration order, then each
// structure's cell run. Arrays are opened by the lo marker and closed by hi;
// a headed list is opened by the letter carrying its head pointer; a
// headless list is opened by any bare cell. A head pointer sitting on the
// nil cell declares its list empty, so that list contributes no cells.
struct ShapeTracker {
  const Session& s;

  struct Step {
    enum Kind { NilCell, ScalarCell, Structure };
    Kind kind;
    int idx;
  };
  std::vector<Step> steps;

  struct St {
    int step = 0;
    bool inside = false; // within the cell run of steps[step]
    uint32_t empty = 0;  // lists whose head was on the nil cell
    auto operator<=>(const St&) const = default;
  };

  explicit ShapeTracker(const Session& sess) : s(sess) {
    if (s.nil_cell) steps.push_back({Step::NilCell, 0});
    if (s.scalar_cells)
      for (int k = 0; k < (int)s.scalars.size(); ++k)
        steps.push_back({Step::ScalarCell, k});
    for (int i = 0; i < (int)s.structures.size(); ++i)
      steps.push_back({Step::Structure, i});
  }

  bool is_array(int i) const {
    return s.structures[i].kind == StructureDecl::Kind::Array;
  }
  bool headless_list(int i) const {
    return !is_array(i) && s.structures[i].head.empty();
  }
  // A step a later letter may jump over: a structure that can be absent.
  bool skippable(const Step& st, uint32_t empty) const {
    if (st.kind != Step::Structure) return false;
    return ((empty >> st.idx) & 1) || headless_list(st.idx);
  }
  // When a new structure opens while a list's cell run is live, that run
  // ends; arrays refuse, their run only ends at the hi marker.
  bool close_current(St& c) const {
    if (!c.inside) return true;
    if (is_array(steps[c.step].idx)) return false;
    c.step += 1;
    c.inside = false;
    return true;
  }

  std::optional<St> advance(St c, const Letter& l) const {
    const int nsteps = (int)steps.size();
    if (s.nil_cell && (l.ptrs & s.nil_bit())) {
      if (c.inside || c.step >= nsteps || steps[c.step].kind != Step::NilCell)
        return {};
      if (l.y >= 0) return {};
      uint32_t rest = l.ptrs & ~s.nil_bit();
      St n{c.step + 1, false, c.empty};
      for (int p = 0; p < (int)s.pointers.size(); ++p) {
        uint32_t b = s.pointer_bit(p);
        if (!(rest & b)) continue;
        rest &= ~b;
        const PointerDomain& d = s.domains[p];
        if (d.kind == PointerDomain::Kind::Index) return {}; // indices are never null
        if (d.kind == PointerDomain::Kind::Head) n.empty |= 1u << d.structure;
      }
      if (rest) return {};
      return n;
    }
    if (s.scalar_cells) {
      for (int k = 0; k < (int)s.scalars.size(); ++k) {
        if (!(l.ptrs & s.scalar_bit(k))) continue;
        if (c.inside || c.step >= nsteps ||
            steps[c.step].kind != Step::ScalarCell || steps[c.step].idx != k)
          return {};
        if (l.y >= 0 || l.ptrs != s.scalar_bit(k)) return {};
        return St{c.step + 1, false, c.empty};
      }
    }
    if (s.low_bit() && (l.ptrs & s.low_bit())) {
      if (l.y >= 0) return {};
      St base = c;
      if (!close_current(base)) return {};
      int k = base.step;
      while (k < nsteps && skippable(steps[k], base.empty)) ++k;
      if (k >= nsteps || steps[k].kind != Step::Structure || !is_array(steps[k].idx))
        return {};
      int t = steps[k].idx;
      uint32_t rest = l.ptrs & ~s.low_bit();
      for (int p = 0; p < (int)s.pointers.size(); ++p) {
        uint32_t b = s.pointer_bit(p);
        if (!(rest & b)) continue;
        rest &= ~b;
        const PointerDomain& d = s.domains[p];
        if (d.kind != PointerDomain::Kind::Index || d.structure != t || !d.allow_low)
          return {};
      }
      if (rest) return {};
      return St{k, true, base.empty};
    }
    if (s.high_bit() && (l.ptrs & s.high_bit())) {
      if (l.y >= 0) return {};
      if (!c.inside || !is_array(steps[c.step].idx)) return {};
      int t = steps[c.step].idx;
      uint32_t rest = l.ptrs & ~s.high_bit();
      for (int p = 0; p < (int)s.pointers.size(); ++p) {
        uint32_t b = s.pointer_bit(p);
        if (!(rest & b)) continue;
        rest &= ~b;
        const PointerDomain& d = s.domains[p];
        if (d.kind != PointerDomain::Kind::Index || d.structure != t) return {};
      }
      if (rest) return {};
      return St{c.step + 1, false, c.empty};
    }
    // a structure cell, possibly opening a list
    int opens = -1;
    uint32_t rest = l.ptrs;
    uint32_t cell_ptrs = 0;
    for (int p = 0; p < (int)s.pointers.size(); ++p) {
      uint32_t b = s.pointer_bit(p);
      if (!(rest & b)) continue;
      rest &= ~b;
      if (s.domains[p].kind == PointerDomain::Kind::Head) {
        if (opens >= 0 && opens != s.domains[p].structure) return {};
        opens = s.domains[p].structure;
      } else {
        cell_ptrs |= 1u << p;
      }
    }
    if (rest) return {}; // a misplaced nil, marker, or scalar name
    int target;
    if (opens >= 0) {
      if (is_array(opens) || ((c.empty >> opens) & 1)) return {};
      St base = c;
      if (base.inside && steps[base.step].idx == opens) return {};
      if (!close_current(base)) return {};
      int k = base.step;
      while (k < nsteps && steps[k].kind == Step::Structure &&
             steps[k].idx != opens && skippable(steps[k], base.empty))
        ++k;
      if (k >= nsteps || steps[k].kind != Step::Structure || steps[k].idx != opens)
        return {};
      target = k;
    } else if (c.inside) {
      target = c.step;
    } else {
      int k = c.step;
      while (k < nsteps && skippable(steps[k], c.empty) &&
             !headless_list(steps[k].idx))
        ++k;
      if (k >= nsteps || steps[k].kind != Step::Structure ||
          !headless_list(steps[k].idx))
        return {};
      target = k;
    }
    int t = steps[target].idx;
    for (int p = 0; p < (int)s.pointers.size(); ++p)
      if ((cell_ptrs >> p) & 1)
        if (s.domains[p].structure != t) return {};
    return St{target, true, c.empty};
  }

  bool can_end(St c) const {
    int k = c.step;
    if (c.inside) {
      if (is_array(steps[k].idx)) return false;
      k += 1;
    }
    for (; k < (int)steps.size(); ++k)
      if (!skippable(steps[k], c.empty)) return false;
    return true;
  }
};

}  // namespace

Qda restrict_to_encodings(const Qda& a) {
  ShapeTracker shape(*a.session);
  using Key = std::pair<int, ShapeTracker::St>;
  std::map<Key, int> index;
  std::vector<Key> nodes;
  auto intern = [&](int st, ShapeTracker::St sh) {
    Key key{st, sh};
    auto [it, fresh] = index.emplace(key, (int)nodes.size());
    if (fresh) nodes.push_back(key);
    return it->second;
  };
  Qda r;
  r.session = a.session;
  intern(a.initial, {});
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [st, sh] = nodes[i];
    r.states.resize(nodes.size());
    for (const auto& [l, t] : a.states[st].next) {
      auto sh2 = shape.advance(sh, l);
      if (!sh2) continue;
      int j = intern(t, *sh2);
      r.states.resize(nodes.size());
      r.states[i].next[l] = j;
    }
  }
  r.states.resize(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [st, sh] = nodes[i];
    r.states[i].out = shape.can_end(sh) ? a.states[st].out
                                        : DataFormula::bottom(a.session->universe);
  }
  r.initial = 0;
  return r;
}

Qda canonicalize_encodings(const Qda& a) {
  return minimize(normalize_for_language(restrict_to_encodings(a)));
}

bool isomorphic(const Qda& a, const Qda& b) {
  if (a.states.size() != b.states.size()) return false;
  std::vector<int> ab(a.states.size(), -1), ba(b.states.size(), -1);
  std::deque<std::pair<int, int>> work;
  ab[a.initial] = b.initial;
  ba[b.initial] = a.initial;
  work.push_back({a.initial, b.initial});
  while (!work.empty()) {
    auto [qa, qb] = work.front();
    work.pop_front();
    const auto& sa = a.states[qa];
    const auto& sb = b.states[qb];
    if (!(sa.out == sb.out)) return false;
    if (sa.next.size() != sb.next.size()) return false;
    auto ita = sa.next.begin();
    auto itb = sb.next.begin();
    for (; ita != sa.next.end(); ++ita, ++itb) {
      if (ita->first != itb->first) return false;
      int ta = ita->second, tb = itb->second;
      if (ab[ta] < 0 && ba[tb] < 0) {
        ab[ta] = tb;
        ba[tb] = ta;
        work.push_back({ta, tb});
      } else if (ab[ta] != tb || ba[tb] != ta) {
        return false;
      }
    }
  }
  // unreachable states on either side must pair up too; for our canonical
  // (trimmed) automata everything is reachable, so matched sizes suffice
  return true;
}

InclusionResult included(const Qda& a, const Qda& b) {
  assert(a.session == b.session);
  uint32_t full_y = (1u << a.session->y_count) - 1u;
  uint32_t req = a.session->required_mask();

  struct Node {
    int sa;
    int sb; // -1: b fell off its transition map
    uint32_t pm, ym;
    auto operator<=>(const Node&) const = default;
  };
  std::map<Node, int> seen;
  std::vector<Node> nodes;
  std::vector<std::pair<int, Letter>> parent; // node -> (parent node, letter)

  Node root{a.initial, b.initial, 0, 0};
  seen.emplace(root, 0);
  nodes.push_back(root);
  parent.push_back({-1, blank_letter()});

  DataFormula bot = DataFormula::bottom(a.session->universe);
  auto rebuild = [&](int idx) {
    SymbolicWord w;
    while (parent[idx].first >= 0) {
      w.push_back(parent[idx].second);
      idx = parent[idx].first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  for (size_t i = 0; i < nodes.size(); ++i) {
    Node n = nodes[i];
    if (n.pm == req && n.ym == full_y) {
      const DataFormula& oa = a.states[n.sa].out;
      const DataFormula& ob = n.sb < 0 ? bot : b.states[n.sb].out;
      if (!DataFormula::leq(oa, ob)) return {false, rebuild((int)i)};
    }
    for (const auto& [l, ta] : a.states[n.sa].next) {
      if (l.ptrs & n.pm) continue;
      if (l.y >= 0 && (n.ym & (1u << l.y))) continue;
      Node m;
      m.sa = ta;
      if (n.sb < 0) {
        m.sb = -1;
      } else {
        auto it = b.states[n.sb].next.find(l);
        m.sb = it == b.states[n.sb].next.end() ? -1 : it->second;
      }
      m.pm = n.pm | l.ptrs;
      m.ym = n.ym | (l.y >= 0 ? (1u << l.y) : 0);
      if (seen.emplace(m, (int)nodes.size()).second) {
        nodes.push_back(m);
        parent.push_back({(int)i, l});
      }
    }
  }
  return {true, {}};
}

std::string to_dot(const Qda& a) {
  std::ostringstream os;
  os << "digraph qda {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  start [shape=none,label=\"\"];\n";
  os << "  start -> q" << a.initial << ";\n";
  for (size_t i = 0; i < a.states.size(); ++i) {
    os << "  q" << i << " [label=\"q" << i << "\\n" << a.states[i].out.render() << "\"];\n";
  }
  for (size_t i = 0; i < a.states.size(); ++i) {
    for (const auto& [l, t] : a.states[i].next) {
      os << "  q" << i << " -> q" << t << " [label=\"" << render_letter(*a.session, l)
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace qda
