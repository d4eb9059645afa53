#include "qda/translate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qda {

ElasticQda normalize(const ElasticQda& e) {
  const Qda& a = e.a;
  if (!is_elastic(a)) throw std::invalid_argument("normalize: automaton is not elastic");
  uint32_t aux = a.session->aux_mask();

  // product of states with an "a universal variable sat on an auxiliary
  // cell" flag; flagged copies output top
  std::map<std::pair<int, bool>, int> index;
  std::vector<std::pair<int, bool>> nodes;
  auto intern = [&](int q, bool f) {
    auto it = index.find({q, f});
    if (it != index.end()) return it->second;
    int id = (int)nodes.size();
    nodes.push_back({q, f});
    index.insert({{q, f}, id});
    return id;
  };

  Qda out;
  out.session = a.session;
  out.initial = intern(a.initial, false);
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [q, flagged] = nodes[i];
    out.states.resize(nodes.size());
    out.states[i].out =
        flagged ? DataFormula::top(a.session->universe) : a.states[q].out;
    for (const auto& [l, to] : a.states[q].next) {
      bool nf = flagged || (l.y >= 0 && (l.ptrs & aux) != 0);
      out.states[i].next[l] = intern(to, nf);
    }
  }
  out.states.resize(nodes.size());
  return ElasticQda{std::move(out)};
}

namespace {

// Guard construction for one complete path. Returns nothing when the path
// places a universal variable on an auxiliary cell.
std::optional<PathFormula> build_path(const Qda& a, const std::vector<int>& st,
                                      const std::vector<Letter>& ls) {
  const Session& s = *a.session;
  int n = (int)ls.size();

  // blank self-loops at each path position, then the least fixpoint of the
  // irrelevance rules around pure variable reads: a loop next to a variable
  // transition is irrelevant when the state across that transition has no
  // loop or only an irrelevant one
  std::vector<char> loops(n + 1, 0), irr(n + 1, 0);
  for (int i = 0; i <= n; ++i)
    loops[i] = a.states[st[i]].next.count(blank_letter()) ? 1 : 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int k = 0; k < n; ++k) {
      if (ls[k].ptrs != 0 || ls[k].y < 0) continue;
      int q1 = k, q2 = k + 1;
      if (loops[q2] && !irr[q2] && (!loops[q1] || irr[q1])) irr[q2] = 1, changed = true;
      if (loops[q1] && !irr[q1] && (!loops[q2] || irr[q2])) irr[q1] = 1, changed = true;
    }
  }
  auto live = [&](int pos) { return loops[pos] && !irr[pos]; };

  PathFormula pf;
  pf.states = st;
  pf.letters = ls;
  pf.out_state = st[n];

  Guard g;
  int cur = -1;      // structure being read
  bool open = false; // arrays close at their hi marker
  bool have_prev = false, have_anchor = false;
  AtomRef prev_canon{}, anchor{};
  int anchor_off = 0;

  for (int j = 0; j < n; ++j) {
    const Letter& l = ls[j];
    std::vector<int> ps;
    for (size_t p = 0; p < s.pointers.size(); ++p)
      if (l.ptrs & s.pointer_bit((int)p)) ps.push_back((int)p);

    if (l.ptrs & s.nil_bit()) {
      if (l.y >= 0) return std::nullopt;
      for (int p : ps) g.atoms.push_back(StructAtom::null(AtomRef::ptr(p)));
      continue;
    }
    if (s.scalar_cells) {
      bool scalar = false;
      for (size_t k = 0; k < s.scalars.size(); ++k)
        if (l.ptrs & s.scalar_bit((int)k)) scalar = true;
      if (scalar) {
        if (l.y >= 0) return std::nullopt;
        continue;
      }
    }

    // classify the cell and collect the references riding it, canonical
    // order: marker, then pointers, then the universal variable
    std::vector<AtomRef> refs;
    int entering = -1;
    bool headless_entry = false;
    if (l.ptrs & s.low_bit()) {
      if (l.y >= 0) return std::nullopt;
      int t = cur + 1;
      while (t < (int)s.structures.size() &&
             s.structures[t].kind != StructureDecl::Kind::Array)
        ++t;
      if (t >= (int)s.structures.size())
        return std::nullopt;
      entering = t;
      refs.push_back(AtomRef::start(t));
      for (int p : ps) {
        if (s.domains[p].structure != t)
          return std::nullopt;
        g.atoms.push_back(StructAtom::at_low(AtomRef::ptr(p)));
        refs.push_back(AtomRef::ptr(p));
      }
    } else if (l.ptrs & s.high_bit()) {
      if (l.y >= 0) return std::nullopt;
      if (cur < 0 || !open || s.structures[cur].kind != StructureDecl::Kind::Array)
        return std::nullopt;
      refs.push_back(AtomRef::end(cur));
      for (int p : ps) {
        if (s.domains[p].structure != cur)
          return std::nullopt;
        g.atoms.push_back(StructAtom::at_high(AtomRef::ptr(p)));
        refs.push_back(AtomRef::ptr(p));
      }
      open = false;
    } else {
      for (int p : ps) {
        const PointerDomain& d = s.domains[p];
        if (d.kind == PointerDomain::Kind::Head) {
          if (d.structure <= cur)
            return std::nullopt;
          if (entering >= 0 && entering != d.structure)
            return std::nullopt;
          entering = d.structure;
        }
      }
      if (entering < 0 && (cur < 0 || !open)) {
        // a headless list may follow; it is entered by its first cell
        int t = cur + 1;
        while (t < (int)s.structures.size() &&
               !(s.structures[t].kind == StructureDecl::Kind::List &&
                 s.structures[t].head.empty()))
          ++t;
        if (t >= (int)s.structures.size())
          return std::nullopt;
        entering = t;
        headless_entry = true;
      }
      int home = entering >= 0 ? entering : cur;
      for (int p : ps)
        if (s.domains[p].kind != PointerDomain::Kind::Head &&
            s.domains[p].structure != home)
          return std::nullopt;
      for (int p : ps) refs.push_back(AtomRef::ptr(p));
      if (l.y >= 0) refs.push_back(AtomRef::y(l.y));
    }

    if (entering >= 0) {
      // an open list ends exactly at its last participant when no blanks may
      // trail it before the next structure begins
      if (cur >= 0 && open && s.structures[cur].kind == StructureDecl::Kind::List &&
          have_prev && !live(j))
        g.atoms.push_back(StructAtom::at_dist(prev_canon, AtomRef::end(cur), 1));
      cur = entering;
      open = (l.ptrs & s.high_bit()) == 0;
      have_prev = have_anchor = false;
      if (headless_entry) {
        // headless lists measure from a virtual start marker
        have_prev = have_anchor = true;
        prev_canon = anchor = AtomRef::start(cur);
        anchor_off = 0;
      }
    }

    AtomRef canon = refs[0];
    if (have_prev) {
      if (live(j)) {
        g.atoms.push_back(StructAtom::reach(prev_canon, canon, true));
        have_anchor = false;
      } else {
        if (!have_anchor) {
          anchor = prev_canon; // a variable after a gap anchors what follows
          anchor_off = 0;
        }
        ++anchor_off;
        g.atoms.push_back(StructAtom::at_dist(anchor, canon, anchor_off));
      }
    }
    for (size_t r = 1; r < refs.size(); ++r) {
      if (refs[0].kind == AtomRef::Kind::Start || refs[0].kind == AtomRef::Kind::End)
        continue; // pointers on markers already got their at_low/at_high
      if (refs[r].kind == AtomRef::Kind::Y)
        g.atoms.push_back(StructAtom::at_dist(refs[0], refs[r], 0));
      else
        g.atoms.push_back(StructAtom::eq(refs[0], refs[r]));
    }
    if (canon.kind != AtomRef::Kind::Y || !have_anchor) {
      have_anchor = true;
      anchor = canon;
      anchor_off = 0;
    }
    have_prev = true;
    prev_canon = canon;
  }

  if (cur >= 0 && open) {
    if (s.structures[cur].kind == StructureDecl::Kind::Array)
      return std::nullopt;
    if (have_prev && !live(n))
      g.atoms.push_back(StructAtom::at_dist(prev_canon, AtomRef::end(cur), 1));
  }

  for (const Letter& l : ls)
    if (l.y >= 0) pf.y_order.push_back(l.y);
  pf.cover_guard = g;

  // canonical per-path renaming: the variable read k-th becomes y_{k+1}
  std::vector<int> perm(s.y_count);
  for (int r = 0; r < (int)pf.y_order.size(); ++r) perm[pf.y_order[r]] = r;
  Guard rg = g;
  for (StructAtom& at : rg.atoms) {
    if (at.a.kind == AtomRef::Kind::Y) at.a.idx = perm[at.a.idx];
    if (at.b.kind == AtomRef::Kind::Y) at.b.idx = perm[at.b.idx];
  }
  pf.guard = std::move(rg);
  pf.body = a.states[st[n]].out.rename_vars(perm);
  return pf;
}

struct PathWalk {
  const Qda& a;
  uint32_t all_y;
  std::vector<int> states;
  std::vector<Letter> letters;
  std::vector<PathFormula> out;

  void rec(int q, uint32_t pseen, uint32_t yseen) {
    if (pseen == a.session->required_mask() && yseen == all_y) {
      if (!a.states[q].out.is_bottom()) {
        auto pf = build_path(a, states, letters);
        if (pf) out.push_back(std::move(*pf));
      }
      return; // a complete path cannot be validly extended
    }
    for (const auto& [l, to] : a.states[q].next) {
      if (is_blank(l)) continue;
      if (l.ptrs & pseen) continue;
      uint32_t ybit = l.y >= 0 ? (1u << l.y) : 0;
      if (ybit & yseen) continue;
      states.push_back(to);
      letters.push_back(l);
      rec(to, pseen | l.ptrs, yseen | ybit);
      states.pop_back();
      letters.pop_back();
    }
  }
};

} // namespace

std::vector<PathFormula> simple_paths(const ElasticQda& e) {
  PathWalk w{e.a, (uint32_t)((1u << e.a.session->y_count) - 1), {}, {}, {}};
  w.states.push_back(e.a.initial);
  w.rec(e.a.initial, 0, 0);
  return std::move(w.out);
}

TranslatedFormula translate(const ElasticQda& e, Flavor flavor) {
  ElasticQda norm = normalize(e);
  TranslatedFormula tf;
  tf.flavor = flavor;
  tf.session = norm.a.session;
  tf.paths = simple_paths(norm);
  if (flavor == Flavor::Apf) {
    // arrays may not order two universal variables strictly; relax and make
    // the body tolerate the diagonal
    for (PathFormula& p : tf.paths) {
      for (StructAtom& at : p.guard.atoms)
        if (at.kind == StructAtom::Kind::Reach && at.strict &&
            at.a.kind == AtomRef::Kind::Y && at.b.kind == AtomRef::Kind::Y) {
          at.strict = false;
          p.body = p.body.weaken_for_equality(at.a.idx, at.b.idx);
        }
      for (StructAtom& at : p.cover_guard.atoms)
        if (at.kind == StructAtom::Kind::Reach && at.strict &&
            at.a.kind == AtomRef::Kind::Y && at.b.kind == AtomRef::Kind::Y)
          at.strict = false;
    }
  }
  return tf;
}

TranslatedFormula to_strand(const ElasticQda& e) { return translate(e, Flavor::Strand); }
TranslatedFormula to_apf(const ElasticQda& e) { return translate(e, Flavor::Apf); }

LogicFormula TranslatedFormula::to_formula() const {
  std::vector<LogicFormula> kids;
  std::vector<std::pair<Guard, DataFormula>> seen;
  for (const PathFormula& p : paths) {
    if (p.body.is_top()) continue; // trivial conjunct
    bool dup = false;
    for (const auto& sg : seen)
      if (sg.first == p.guard && sg.second == p.body) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back({p.guard, p.body});
    kids.push_back(LogicFormula::forall(p.guard, p.body));
  }
  std::vector<Guard> cover;
  for (const PathFormula& p : paths)
    if (std::find(cover.begin(), cover.end(), p.cover_guard) == cover.end())
      cover.push_back(p.cover_guard);
  kids.push_back(LogicFormula::coverage(std::move(cover), flavor == Flavor::Apf));
  return LogicFormula::conj(std::move(kids));
}

std::string TranslatedFormula::render() const {
  const Session& s = *session;
  std::ostringstream ys;
  for (int i = 0; i < s.y_count; ++i) {
    if (i) ys << ",";
    ys << "y" << (i + 1);
  }
  LogicFormula f = to_formula();
  std::ostringstream os;
  for (const LogicFormula& k : f.kids) {
    if (k.kind == LogicFormula::Kind::Forall) {
      os << "forall " << ys.str() << ". " << render_guard(k.guard, s) << " => "
         << k.body->render() << "\n";
    } else if (k.kind == LogicFormula::Kind::Coverage) {
      os << "closing:";
      bool first = true;
      for (const Guard& g : k.cover) {
        os << (first ? " " : " | ") << "(" << render_guard(g, s) << ")";
        first = false;
      }
      if (k.cover.empty()) os << " (none)";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qda
