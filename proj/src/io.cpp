#include "qda/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qda {

using nlohmann::json;

namespace {

json domain_to_json(const PointerDomain& d) {
  const char* kind = d.kind == PointerDomain::Kind::Head   ? "head"
                     : d.kind == PointerDomain::Kind::Free ? "free"
                                                           : "index";
  json j{{"kind", kind}, {"structure", d.structure}};
  if (d.allow_low) j["allow_low"] = true;
  return j;
}

PointerDomain domain_from_json(const json& j) {
  PointerDomain d;
  std::string k = j.at("kind");
  d.kind = k == "head"   ? PointerDomain::Kind::Head
           : k == "free" ? PointerDomain::Kind::Free
                         : PointerDomain::Kind::Index;
  d.structure = j.at("structure");
  d.allow_low = j.value("allow_low", false);
  return d;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

} // namespace

json session_to_json(const Session& s) {
  json j;
  j["name"] = s.name;
  j["pointers"] = s.pointers;
  j["domains"] = json::array();
  for (const auto& d : s.domains) j["domains"].push_back(domain_to_json(d));
  j["scalars"] = s.scalars;
  j["structures"] = json::array();
  for (const auto& st : s.structures) {
    json sj{{"kind", st.kind == StructureDecl::Kind::List ? "list" : "array"},
            {"name", st.name}};
    if (!st.head.empty()) sj["head"] = st.head;
    j["structures"].push_back(sj);
  }
  j["y_count"] = s.y_count;
  j["arity"] = s.arity;
  j["data_min"] = s.data_min;
  j["data_max"] = s.data_max;
  j["nil_cell"] = s.nil_cell;
  j["scalar_cells"] = s.scalar_cells;
  return j;
}

std::shared_ptr<Session> session_from_json(const json& j) {
  auto s = Session::make(j.at("name"));
  s->pointers = j.at("pointers").get<std::vector<std::string>>();
  for (const auto& dj : j.at("domains")) s->domains.push_back(domain_from_json(dj));
  s->scalars = j.value("scalars", std::vector<std::string>{});
  for (const auto& sj : j.at("structures")) {
    StructureDecl st;
    st.kind = sj.at("kind") == "list" ? StructureDecl::Kind::List
                                      : StructureDecl::Kind::Array;
    st.name = sj.at("name");
    st.head = sj.value("head", "");
    s->structures.push_back(st);
  }
  s->y_count = j.at("y_count");
  s->arity = j.value("arity", 1);
  s->data_min = j.value("data_min", 0);
  s->data_max = j.value("data_max", 3);
  s->nil_cell = j.value("nil_cell", true);
  s->scalar_cells = j.value("scalar_cells", true);
  s->finalize();
  return s;
}

std::shared_ptr<Session> read_session_file(const std::string& path) {
  auto in = open_in(path);
  json j;
  in >> j;
  return session_from_json(j);
}

void write_session_file(const Session& s, const std::string& path) {
  open_out(path) << session_to_json(s).dump(2) << "\n";
}

json qda_to_json(const Qda& a) {
  const Session& s = *a.session;
  json j;
  j["session"] = session_to_json(s);
  j["initial"] = a.initial;
  j["states"] = json::array();
  for (const auto& st : a.states) {
    json sj;
    sj["out"] = st.out.render();
    sj["next"] = json::array();
    for (const auto& [l, to] : st.next)
      sj["next"].push_back(json::array({render_letter(s, l), to}));
    j["states"].push_back(sj);
  }
  return j;
}

Qda qda_from_json(const json& j) {
  Qda a;
  auto session = session_from_json(j.at("session"));
  a.session = session;
  a.initial = j.at("initial");
  for (const auto& sj : j.at("states")) {
    Qda::State st;
    auto out = DataFormula::parse(session->universe, sj.at("out"));
    if (!out) throw std::runtime_error("bad state formula: " + sj.at("out").get<std::string>());
    st.out = *out;
    for (const auto& ej : sj.at("next")) {
      auto l = parse_letter(*session, ej.at(0));
      if (!l) throw std::runtime_error("bad letter: " + ej.at(0).get<std::string>());
      st.next[*l] = ej.at(1);
    }
    a.states.push_back(std::move(st));
  }
  if (a.initial < 0 || a.initial >= (int)a.states.size())
    throw std::runtime_error("initial state out of range");
  for (const auto& st : a.states)
    for (const auto& [l, to] : st.next)
      if (to < 0 || to >= (int)a.states.size())
        throw std::runtime_error("transition target out of range");
  return a;
}

Qda read_qda_file(const std::string& path) {
  auto in = open_in(path);
  json j;
  in >> j;
  return qda_from_json(j);
}

void write_qda_file(const Qda& a, const std::string& path) {
  open_out(path) << qda_to_json(a).dump(2) << "\n";
}

namespace {

json ref_to_json(const AtomRef& r) {
  const char* k = r.kind == AtomRef::Kind::Ptr     ? "ptr"
                  : r.kind == AtomRef::Kind::Y     ? "y"
                  : r.kind == AtomRef::Kind::Start ? "start"
                                                   : "end";
  return json{{"k", k}, {"i", r.idx}};
}

AtomRef ref_from_json(const json& j) {
  std::string k = j.at("k");
  AtomRef r;
  r.kind = k == "ptr"     ? AtomRef::Kind::Ptr
           : k == "y"     ? AtomRef::Kind::Y
           : k == "start" ? AtomRef::Kind::Start
                          : AtomRef::Kind::End;
  r.idx = j.at("i");
  return r;
}

json atom_to_json(const StructAtom& a) {
  static const char* names[] = {"null", "at_low", "at_high", "eq", "reach", "dist"};
  json j{{"kind", names[(int)a.kind]}, {"a", ref_to_json(a.a)}};
  if (a.kind == StructAtom::Kind::PtrEq || a.kind == StructAtom::Kind::Reach ||
      a.kind == StructAtom::Kind::Dist)
    j["b"] = ref_to_json(a.b);
  if (a.kind == StructAtom::Kind::Reach) j["strict"] = a.strict;
  if (a.kind == StructAtom::Kind::Dist) j["dist"] = a.dist;
  return j;
}

StructAtom atom_from_json(const json& j) {
  std::string k = j.at("kind");
  StructAtom a;
  a.kind = k == "null"      ? StructAtom::Kind::PtrNull
           : k == "at_low"  ? StructAtom::Kind::AtLow
           : k == "at_high" ? StructAtom::Kind::AtHigh
           : k == "eq"      ? StructAtom::Kind::PtrEq
           : k == "reach"   ? StructAtom::Kind::Reach
                            : StructAtom::Kind::Dist;
  a.a = ref_from_json(j.at("a"));
  if (j.contains("b")) a.b = ref_from_json(j.at("b"));
  a.strict = j.value("strict", true);
  a.dist = j.value("dist", 0);
  return a;
}

json guard_to_json(const Guard& g) {
  json arr = json::array();
  for (const auto& at : g.atoms) arr.push_back(atom_to_json(at));
  return arr;
}

Guard guard_from_json(const json& j) {
  Guard g;
  for (const auto& aj : j) g.atoms.push_back(atom_from_json(aj));
  return g;
}

} // namespace

json formula_to_json(const TranslatedFormula& f) {
  const Session& s = *f.session;
  json j;
  j["flavor"] = f.flavor == Flavor::Strand ? "strand" : "apf";
  j["session"] = session_to_json(s);
  j["paths"] = json::array();
  for (const PathFormula& p : f.paths) {
    json pj;
    pj["states"] = p.states;
    pj["letters"] = json::array();
    for (const Letter& l : p.letters) pj["letters"].push_back(render_letter(s, l));
    pj["y_order"] = p.y_order;
    pj["cover_guard"] = guard_to_json(p.cover_guard);
    pj["guard"] = guard_to_json(p.guard);
    pj["body"] = p.body.render();
    pj["out_state"] = p.out_state;
    j["paths"].push_back(pj);
  }
  j["pretty"] = f.render();
  return j;
}

TranslatedFormula formula_from_json(const json& j) {
  TranslatedFormula f;
  f.flavor = j.at("flavor") == "strand" ? Flavor::Strand : Flavor::Apf;
  auto session = session_from_json(j.at("session"));
  f.session = session;
  for (const auto& pj : j.at("paths")) {
    PathFormula p;
    p.states = pj.at("states").get<std::vector<int>>();
    for (const auto& lj : pj.at("letters")) {
      auto l = parse_letter(*session, lj);
      if (!l) throw std::runtime_error("bad letter in formula file");
      p.letters.push_back(*l);
    }
    p.y_order = pj.at("y_order").get<std::vector<int>>();
    p.cover_guard = guard_from_json(pj.at("cover_guard"));
    p.guard = guard_from_json(pj.at("guard"));
    auto body = DataFormula::parse(session->universe, pj.at("body"));
    if (!body) throw std::runtime_error("bad body in formula file");
    p.body = *body;
    p.out_state = pj.at("out_state");
    f.paths.push_back(std::move(p));
  }
  return f;
}

TranslatedFormula read_formula_file(const std::string& path) {
  auto in = open_in(path);
  json j;
  in >> j;
  return formula_from_json(j);
}

void write_formula_file(const TranslatedFormula& f, const std::string& path) {
  open_out(path) << formula_to_json(f).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// SMT-LIB emission

namespace {

struct SmtEmitter {
  const TranslatedFormula& f;
  const Session& s;
  std::ostringstream os;
  bool apf;

  explicit SmtEmitter(const TranslatedFormula& tf)
      : f(tf), s(*tf.session), apf(tf.flavor == Flavor::Apf) {}

  std::string size_const(int st) const { return "n_" + s.structures[st].name; }
  std::string start_const(int st) const { return "start_" + s.structures[st].name; }
  std::string end_const(int st) const { return "end_" + s.structures[st].name; }
  std::string data_fn(int comp) const {
    return s.arity == 1 ? "data" : "data_" + std::to_string(comp);
  }

  std::string ref(const AtomRef& r) const {
    switch (r.kind) {
      case AtomRef::Kind::Ptr: return s.pointers[r.idx];
      case AtomRef::Kind::Y: return "y" + std::to_string(r.idx + 1);
      case AtomRef::Kind::Start:
        return apf ? "(- 1)" : start_const(r.idx);
      case AtomRef::Kind::End:
        return apf ? size_const(r.idx) : end_const(r.idx);
    }
    return "?";
  }

  std::string atom(const StructAtom& a) const {
    std::string x = ref(a.a), y = ref(a.b);
    switch (a.kind) {
      case StructAtom::Kind::PtrNull:
        return apf ? "(= " + x + " nil_pos)" : "(= " + x + " nil)";
      case StructAtom::Kind::AtLow:
        return apf ? "(= " + x + " (- 1))"
                   : "(= " + x + " " + start_const(ptr_structure(a.a)) + ")";
      case StructAtom::Kind::AtHigh:
        return apf ? "(= " + x + " " + size_const(ptr_structure(a.a)) + ")"
                   : "(= " + x + " " + end_const(ptr_structure(a.a)) + ")";
      case StructAtom::Kind::PtrEq: return "(= " + x + " " + y + ")";
      case StructAtom::Kind::Reach:
        if (apf) return a.strict ? "(< " + x + " " + y + ")" : "(<= " + x + " " + y + ")";
        return a.strict ? "(and (reach " + x + " " + y + ") (distinct " + x + " " + y + "))"
                        : "(reach " + x + " " + y + ")";
      case StructAtom::Kind::Dist:
        if (a.dist == 0) return "(= " + x + " " + y + ")";
        if (apf) return "(= " + y + " (+ " + x + " " + std::to_string(a.dist) + "))";
        return succ_chain(x, y, a.dist);
    }
    return "true";
  }

  int ptr_structure(const AtomRef& r) const {
    return r.kind == AtomRef::Kind::Ptr ? s.domains[r.idx].structure : r.idx;
  }

  std::string succ_chain(const std::string& x, const std::string& y, int d) const {
    if (d == 1) return "(succ " + x + " " + y + ")";
    std::string vars, body;
    std::string prev = x;
    for (int i = 1; i < d; ++i) {
      std::string m = "m" + std::to_string(i);
      vars += "(" + m + " Cell) ";
      body += "(succ " + prev + " " + m + ") ";
      prev = m;
    }
    body += "(succ " + prev + " " + y + ")";
    return "(exists (" + vars + ") (and " + body + "))";
  }

  std::string term(const Term& t, int y_shift = 0) const {
    (void)y_shift;
    if (t.kind == Term::Kind::Scalar) return s.scalars[t.scalar];
    std::string yv = "y" + std::to_string(t.var + 1);
    if (apf) {
      std::string arr = s.arity == 1 ? "data" : ("data_" + std::to_string(t.comp));
      return "(select " + arr + " " + yv + ")";
    }
    return "(" + data_fn(t.comp) + " " + yv + ")";
  }

  std::string body(const DataFormula& df) const {
    if (df.is_bottom()) return "false";
    if (df.is_top()) return "true";
    std::string out = "(and";
    for (const auto& lit : df.literals()) {
      std::string a = term(lit.a), b = term(lit.b);
      switch (lit.rel) {
        case RelLt: out += " (< " + a + " " + b + ")"; break;
        case RelGt: out += " (> " + a + " " + b + ")"; break;
        case RelLe: out += " (<= " + a + " " + b + ")"; break;
        case RelGe: out += " (>= " + a + " " + b + ")"; break;
        case RelEq: out += " (= " + a + " " + b + ")"; break;
        case RelNe: out += " (distinct " + a + " " + b + ")"; break;
      }
    }
    return out + ")";
  }

  std::string quant_vars() const {
    std::string v;
    for (int i = 0; i < s.y_count; ++i)
      v += "(y" + std::to_string(i + 1) + (apf ? " Int) " : " Cell) ");
    return v;
  }

  // range restriction mirroring structure-position valuations
  std::string y_context() const {
    std::string ctx;
    for (int i = 0; i < s.y_count; ++i) {
      std::string yv = "y" + std::to_string(i + 1);
      if (apf) {
        ctx += "(<= 0 " + yv + ") (< " + yv + " " + size_const(0) + ") ";
      } else {
        std::string reach;
        int alts = 0;
        for (size_t st = 0; st < s.structures.size(); ++st) {
          std::string root = s.structures[st].head.empty()
                                 ? start_const((int)st)
                                 : s.structures[st].head;
          reach += "(reach " + root + " " + yv + ") ";
          ++alts;
        }
        ctx += "(distinct " + yv + " nil) ";
        ctx += alts > 1 ? "(or " + reach + ") " : reach;
      }
    }
    for (int i = 0; i < s.y_count; ++i)
      for (int k = i + 1; k < s.y_count; ++k)
        ctx += "(distinct y" + std::to_string(i + 1) + " y" + std::to_string(k + 1) + ") ";
    return ctx;
  }

  std::string guard(const Guard& g, bool skip_weak_yy) const {
    std::string out;
    for (const StructAtom& at : g.atoms) {
      if (skip_weak_yy && at.kind == StructAtom::Kind::Reach && !at.strict &&
          at.a.kind == AtomRef::Kind::Y && at.b.kind == AtomRef::Kind::Y)
        continue;
      out += " " + atom(at);
    }
    return out.empty() ? " true" : out;
  }

  std::string emit() {
    os << "; invariant for session " << s.name << ", "
       << (apf ? "array flavor" : "list flavor") << "\n";
    os << "(set-logic ALL)\n";
    if (apf) {
      if (s.structures.size() != 1)
        throw std::runtime_error("array-flavor emission supports one structure");
      os << "(declare-const " << size_const(0) << " Int)\n";
      os << "(assert (<= 0 " << size_const(0) << "))\n";
      if (s.arity == 1) {
        os << "(declare-const data (Array Int Int))\n";
      } else {
        for (int c = 0; c < s.arity; ++c)
          os << "(declare-const data_" << c << " (Array Int Int))\n";
      }
      os << "(declare-const nil_pos Int)\n(assert (= nil_pos (- 2)))\n";
      for (size_t p = 0; p < s.pointers.size(); ++p) {
        os << "(declare-const " << s.pointers[p] << " Int)\n";
        const PointerDomain& d = s.domains[p];
        std::string lo = d.allow_low ? "(- 1)" : "0";
        os << "(assert (and (<= " << lo << " " << s.pointers[p] << ") (<= "
           << s.pointers[p] << " " << size_const(d.structure) << ")))\n";
      }
    } else {
      os << "(declare-sort Cell 0)\n";
      os << "(declare-const nil Cell)\n";
      os << "(declare-fun succ (Cell Cell) Bool)\n";
      os << "(declare-fun reach (Cell Cell) Bool)\n";
      os << "(assert (forall ((x Cell)) (reach x x)))\n";
      os << "(assert (forall ((x Cell) (y Cell) (z Cell)) "
            "(=> (and (reach x y) (reach y z)) (reach x z))))\n";
      os << "(assert (forall ((x Cell) (y Cell)) (=> (succ x y) (reach x y))))\n";
      os << "(assert (forall ((x Cell) (y Cell)) "
            "(=> (and (reach x y) (reach y x)) (= x y))))\n";
      if (s.arity == 1) {
        os << "(declare-fun data (Cell) Int)\n";
      } else {
        for (int c = 0; c < s.arity; ++c)
          os << "(declare-fun data_" << c << " (Cell) Int)\n";
      }
      for (size_t st = 0; st < s.structures.size(); ++st) {
        if (s.structures[st].head.empty())
          os << "(declare-const " << start_const((int)st) << " Cell)\n";
        os << "(declare-const " << end_const((int)st) << " Cell)\n";
        os << "(assert (= " << end_const((int)st) << " nil))\n";
      }
      for (const auto& p : s.pointers) os << "(declare-const " << p << " Cell)\n";
    }
    for (const auto& sc : s.scalars) os << "(declare-const " << sc << " Int)\n";

    LogicFormula top = f.to_formula();
    for (const LogicFormula& k : top.kids) {
      if (k.kind == LogicFormula::Kind::Forall) {
        os << "(assert (forall (" << quant_vars() << ") (=> (and " << y_context()
           << guard(k.guard, false) << ") " << body(*k.body) << ")))\n";
      } else if (k.kind == LogicFormula::Kind::Coverage) {
        os << "(assert (forall (" << quant_vars() << ") (=> (and " << y_context()
           << ") (or";
        if (k.cover.empty()) os << " false";
        for (const Guard& g : k.cover)
          os << " (and" << guard(g, k.cover_ignores_weak_yy) << ")";
        os << "))))\n";
      }
    }
    os << "(check-sat)\n";
    return os.str();
  }
};

} // namespace

std::string emit_smtlib(const TranslatedFormula& f) {
  SmtEmitter e(f);
  return e.emit();
}

}  // namespace qda
