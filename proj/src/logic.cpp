#include "qda/logic.hpp"

#include <functional>
#include <sstream>

namespace qda {

LogicFormula LogicFormula::constant(bool v) {
  LogicFormula f;
  f.kind = Kind::Const;
  f.value = v;
  return f;
}
LogicFormula LogicFormula::fact_atom(StructAtom a) {
  LogicFormula f;
  f.kind = Kind::Fact;
  f.fact = a;
  return f;
}
LogicFormula LogicFormula::forall(Guard g, DataFormula b) {
  LogicFormula f;
  f.kind = Kind::Forall;
  f.guard = std::move(g);
  f.body = std::move(b);
  return f;
}
LogicFormula LogicFormula::coverage(std::vector<Guard> gs, bool ignore_weak_yy) {
  LogicFormula f;
  f.kind = Kind::Coverage;
  f.cover = std::move(gs);
  f.cover_ignores_weak_yy = ignore_weak_yy;
  return f;
}
LogicFormula LogicFormula::conj(std::vector<LogicFormula> kids) {
  LogicFormula f;
  f.kind = Kind::And;
  f.kids = std::move(kids);
  return f;
}
LogicFormula LogicFormula::disj(std::vector<LogicFormula> kids) {
  LogicFormula f;
  f.kind = Kind::Or;
  f.kids = std::move(kids);
  return f;
}

namespace {

struct Pos {
  int structure;
  int index; // -1 before the first cell, size one past the last
};

std::optional<Pos> position_of(const AtomRef& r, const Session& s, const ProgramConfig& c,
                               const std::vector<CellSlot>& valuation) {
  switch (r.kind) {
    case AtomRef::Kind::Ptr: {
      const PointerBinding& b = c.bindings[r.idx];
      switch (b.kind) {
        case PointerBinding::Kind::Null: return std::nullopt;
        case PointerBinding::Kind::Cell: return Pos{b.structure, b.index};
        case PointerBinding::Kind::Low: return Pos{b.structure, -1};
        case PointerBinding::Kind::High:
          return Pos{b.structure, (int)c.cells[b.structure].size()};
      }
      return std::nullopt;
    }
    case AtomRef::Kind::Y:
      if (r.idx >= (int)valuation.size()) return std::nullopt;
      return Pos{valuation[r.idx].structure, valuation[r.idx].index};
    case AtomRef::Kind::Start: return Pos{r.idx, -1};
    case AtomRef::Kind::End: return Pos{r.idx, (int)c.cells[r.idx].size()};
  }
  (void)s;
  return std::nullopt;
}

} // namespace

bool eval_atom(const StructAtom& atom, const Session& s, const ProgramConfig& c,
               const std::vector<CellSlot>& valuation) {
  switch (atom.kind) {
    case StructAtom::Kind::PtrNull:
      return atom.a.kind == AtomRef::Kind::Ptr &&
             c.bindings[atom.a.idx].kind == PointerBinding::Kind::Null;
    case StructAtom::Kind::AtLow:
      return atom.a.kind == AtomRef::Kind::Ptr &&
             c.bindings[atom.a.idx].kind == PointerBinding::Kind::Low;
    case StructAtom::Kind::AtHigh:
      return atom.a.kind == AtomRef::Kind::Ptr &&
             c.bindings[atom.a.idx].kind == PointerBinding::Kind::High;
    default: break;
  }
  auto pa = position_of(atom.a, s, c, valuation);
  auto pb = position_of(atom.b, s, c, valuation);
  if (atom.kind == StructAtom::Kind::PtrEq) {
    if (!pa && !pb) return true; // two null pointers
    if (!pa || !pb) return false;
    return pa->structure == pb->structure && pa->index == pb->index;
  }
  if (!pa || !pb || pa->structure != pb->structure) return false;
  switch (atom.kind) {
    case StructAtom::Kind::Reach:
      return atom.strict ? pa->index < pb->index : pa->index <= pb->index;
    case StructAtom::Kind::Dist:
      return pb->index - pa->index == atom.dist;
    default: return false;
  }
}

namespace {

std::vector<CellSlot> all_slots(const ProgramConfig& c) {
  std::vector<CellSlot> slots;
  for (size_t st = 0; st < c.cells.size(); ++st)
    for (size_t i = 0; i < c.cells[st].size(); ++i) slots.push_back({(int)st, (int)i});
  return slots;
}

// invoke fn on every injective placement; returns false on the first failure
bool for_all_valuations(const Session& s, const ProgramConfig& c,
                        const std::function<bool(const std::vector<CellSlot>&)>& fn) {
  std::vector<CellSlot> slots = all_slots(c);
  if ((int)slots.size() < s.y_count) return true; // vacuous
  std::vector<CellSlot> cur(s.y_count);
  std::vector<bool> used(slots.size(), false);
  std::function<bool(int)> rec = [&](int y) -> bool {
    if (y == s.y_count) return fn(cur);
    for (size_t i = 0; i < slots.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur[y] = slots[i];
      bool ok = rec(y + 1);
      used[i] = false;
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

bool guard_satisfied(const Guard& g, const Session& s, const ProgramConfig& c,
                     const std::vector<CellSlot>& v, bool ignore_weak_yy) {
  for (const StructAtom& a : g.atoms) {
    if (ignore_weak_yy && a.kind == StructAtom::Kind::Reach && !a.strict &&
        a.a.kind == AtomRef::Kind::Y && a.b.kind == AtomRef::Kind::Y)
      continue;
    if (!eval_atom(a, s, c, v)) return false;
  }
  return true;
}

bool eval_body(const DataFormula& body, const Session& s, const ProgramConfig& c,
               const std::vector<CellSlot>& v) {
  if (body.is_bottom()) return false;
  if (body.is_top()) return true;
  const auto& u = *s.universe;
  std::vector<int> values(u.terms.size(), 0);
  for (size_t t = 0; t < u.terms.size(); ++t) {
    const Term& term = u.terms[t];
    if (term.kind == Term::Kind::Register)
      values[t] = c.cells[v[term.var].structure][v[term.var].index][term.comp];
    else
      values[t] = c.scalar_values[term.scalar];
  }
  return body.eval(values);
}

} // namespace

bool holds(const LogicFormula& f, const Session& s, const ProgramConfig& c) {
  switch (f.kind) {
    case LogicFormula::Kind::Const: return f.value;
    case LogicFormula::Kind::Fact: return eval_atom(f.fact, s, c, {});
    case LogicFormula::Kind::Forall:
      return for_all_valuations(s, c, [&](const std::vector<CellSlot>& v) {
        if (!guard_satisfied(f.guard, s, c, v, false)) return true;
        return eval_body(*f.body, s, c, v);
      });
    case LogicFormula::Kind::Coverage:
      return for_all_valuations(s, c, [&](const std::vector<CellSlot>& v) {
        for (const Guard& g : f.cover)
          if (guard_satisfied(g, s, c, v, f.cover_ignores_weak_yy)) return true;
        return false;
      });
    case LogicFormula::Kind::And:
      for (const auto& k : f.kids)
        if (!holds(k, s, c)) return false;
      return true;
    case LogicFormula::Kind::Or:
      for (const auto& k : f.kids)
        if (holds(k, s, c)) return true;
      return false;
  }
  return false;
}

std::string render_ref(const AtomRef& r, const Session& s) {
  switch (r.kind) {
    case AtomRef::Kind::Ptr: return s.pointers[r.idx];
    case AtomRef::Kind::Y: return "y" + std::to_string(r.idx + 1);
    case AtomRef::Kind::Start: return "-1";
    case AtomRef::Kind::End: return "n";
  }
  return "?";
}

std::string render_atom(const StructAtom& a, const Session& s) {
  std::ostringstream os;
  switch (a.kind) {
    case StructAtom::Kind::PtrNull: os << render_ref(a.a, s) << " = nil"; break;
    case StructAtom::Kind::AtLow: os << render_ref(a.a, s) << " < 0"; break;
    case StructAtom::Kind::AtHigh: os << render_ref(a.a, s) << " >= n"; break;
    case StructAtom::Kind::PtrEq:
      os << render_ref(a.a, s) << " = " << render_ref(a.b, s);
      break;
    case StructAtom::Kind::Reach:
      os << render_ref(a.a, s) << (a.strict ? " ->+ " : " ->* ") << render_ref(a.b, s);
      break;
    case StructAtom::Kind::Dist:
      if (a.dist == 0)
        os << render_ref(a.a, s) << " = " << render_ref(a.b, s);
      else if (a.dist == 1 && a.a.kind != AtomRef::Kind::Start)
        os << "succ(" << render_ref(a.a, s) << ", " << render_ref(a.b, s) << ")";
      else if (a.a.kind == AtomRef::Kind::Start)
        os << render_ref(a.b, s) << " = " << (a.dist - 1);
      else
        os << "dist(" << render_ref(a.a, s) << ", " << render_ref(a.b, s) << ", "
           << a.dist << ")";
      break;
  }
  return os.str();
}

std::string render_guard(const Guard& g, const Session& s) {
  if (g.atoms.empty()) return "true";
  std::ostringstream os;
  for (size_t i = 0; i < g.atoms.size(); ++i) {
    if (i) os << " & ";
    os << render_atom(g.atoms[i], s);
  }
  return os.str();
}

}  // namespace qda
