#include "qda/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace qda {

namespace {

Letter lt(uint32_t ptrs, int y = -1) { return Letter{ptrs, (int8_t)y}; }

// every letter of the session: any subset of name bits, any variable slot
std::vector<Letter> full_alphabet(const Session& s) {
  std::vector<Letter> out;
  uint32_t bits = (uint32_t)s.letter_names().size();
  for (uint32_t m = 0; m < (1u << bits); ++m)
    for (int y = -1; y < s.y_count; ++y) out.push_back(lt(m, y));
  return out;
}

template <typename Fn>
void each_vector(int len, int lo, int hi, std::vector<int>& v, const Fn& fn) {
  if ((int)v.size() == len) {
    fn(v);
    return;
  }
  for (int d = lo; d <= hi; ++d) {
    v.push_back(d);
    each_vector(len, lo, hi, v, fn);
    v.pop_back();
  }
}

template <typename Fn>
void each_sorted_vector(int len, int lo, int hi, std::vector<int>& v, const Fn& fn) {
  if ((int)v.size() == len) {
    fn(v);
    return;
  }
  for (int d = v.empty() ? lo : v.back(); d <= hi; ++d) {
    v.push_back(d);
    each_sorted_vector(len, lo, hi, v, fn);
    v.pop_back();
  }
}

std::vector<std::vector<int>> cells1(const std::vector<int>& data) {
  std::vector<std::vector<int>> c;
  c.reserve(data.size());
  for (int d : data) c.push_back({d});
  return c;
}

std::shared_ptr<Session> base(std::string name) {
  auto s = Session::make(std::move(name));
  s->scalar_cells = false;
  return s;
}

// --- trace generators -------------------------------------------------------

// i = 0; while (i < n && a[i] != k) i++;
void trace_array_find(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& a) {
      for (int k = lo; k <= hi; ++k) {
        ProgramConfig c;
        c.scalar_values = {k};
        c.cells = {cells1(a)};
        for (int i = 0;; ++i) {
          c.bindings = {i == n ? PointerBinding::high(0) : PointerBinding::cell(0, i)};
          sink(c);
          if (i == n || a[i] == k) break;
        }
      }
    });
  }
}

// for (i = 0; i < n; i++) b[i] = a[i];  cells carry (a[j], b[j]), b zeroed
void trace_array_copy(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& a) {
      ProgramConfig c;
      c.cells = {{}};
      for (int i = 0; i <= n; ++i) {
        c.cells[0].clear();
        for (int j = 0; j < n; ++j) c.cells[0].push_back({a[j], j < i ? a[j] : 0});
        c.bindings = {i == n ? PointerBinding::high(0) : PointerBinding::cell(0, i)};
        sink(c);
      }
    });
  }
}

// insertion sort, observed at the head of the shifting loop; only j and the
// held key matter to the invariant (the slot at j+1 is the hole), so the
// outer index is not part of the configuration
void trace_ins_sort(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& input) {
      std::vector<int> a = input;
      for (int i = 1; i < n; ++i) {
        int key = a[i];
        int j = i - 1;
        for (;;) {
          ProgramConfig c;
          c.scalar_values = {key};
          c.cells = {cells1(a)};
          c.bindings = {j < 0 ? PointerBinding::low(0) : PointerBinding::cell(0, j)};
          sink(c);
          if (j < 0 || a[j] <= key) break;
          a[j + 1] = a[j];
          --j;
        }
        a[j + 1] = key;
      }
    });
  }
}

// selection sort, observed at the head of the minimum-search loop
void trace_sel_sort(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& input) {
      std::vector<int> a = input;
      for (int i = 0; i + 1 < n; ++i) {
        int mn = i;
        for (int j = i + 1;; ++j) {
          ProgramConfig c;
          c.cells = {cells1(a)};
          c.bindings = {PointerBinding::cell(0, i),
                        j == n ? PointerBinding::high(0) : PointerBinding::cell(0, j),
                        PointerBinding::cell(0, mn)};
          sink(c);
          if (j == n) break;
          if (a[j] < a[mn]) mn = j;
        }
        std::swap(a[i], a[mn]);
      }
    });
  }
}

// cur = head; while (cur && cur->data < k) cur = cur->next;  sorted inputs
void trace_list_find(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 1; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_sorted_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      for (int k = lo; k <= hi; ++k) {
        ProgramConfig c;
        c.scalar_values = {k};
        c.cells = {cells1(data)};
        for (int cur = 0;; ++cur) {
          c.bindings = {PointerBinding::cell(0, 0),
                        cur == n ? PointerBinding::null() : PointerBinding::cell(0, cur)};
          sink(c);
          if (cur == n || data[cur] >= k) break;
        }
      }
    });
  }
}

// prev = nil; cur = head; while (cur && cur->data < k) { prev = cur; ... };
// the insertion point is determined by prev alone (cur is prev->next or the
// head), so the configuration tracks head and prev
void trace_list_insert(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_sorted_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      for (int k = lo; k <= hi; ++k) {
        ProgramConfig c;
        c.scalar_values = {k};
        c.cells = {cells1(data)};
        for (int cur = 0;; ++cur) {
          c.bindings = {n == 0 ? PointerBinding::null() : PointerBinding::cell(0, 0),
                        cur == 0 ? PointerBinding::null() : PointerBinding::cell(0, cur - 1)};
          sink(c);
          if (cur == n || data[cur] >= k) break;
        }
      }
    });
  }
}

// cur = head; while (cur) { cur->data = v; cur = cur->next; }
void trace_list_init(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      for (int v = lo; v <= hi; ++v) {
        ProgramConfig c;
        c.scalar_values = {v};
        for (int cur = 0;; ++cur) {
          c.cells = {{}};
          for (int j = 0; j < n; ++j) c.cells[0].push_back({j < cur ? v : data[j]});
          c.bindings = {n == 0 ? PointerBinding::null() : PointerBinding::cell(0, 0),
                        cur == n ? PointerBinding::null() : PointerBinding::cell(0, cur)};
          sink(c);
          if (cur == n) break;
        }
      }
    });
  }
}

// m = lo; cur = head; while (cur) { if (cur->data > m) m = cur->data; ... }
void trace_list_max(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      ProgramConfig c;
      c.cells = {cells1(data)};
      int m = lo;
      for (int cur = 0;; ++cur) {
        c.scalar_values = {m};
        c.bindings = {n == 0 ? PointerBinding::null() : PointerBinding::cell(0, 0),
                      cur == n ? PointerBinding::null() : PointerBinding::cell(0, cur)};
        sink(c);
        if (cur == n) break;
        m = std::max(m, data[cur]);
      }
    });
  }
}

// in-place reversal of a sorted list: rev holds the reversed prefix, cur the
// untouched suffix, observed once per detached node (and at entry and exit)
void trace_list_reverse(int max_cells, int lo, int hi, const ConfigSink& sink) {
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_sorted_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      for (int t = 0; t <= n; ++t) {
        ProgramConfig c;
        c.cells = {{}, {}};
        for (int j = t - 1; j >= 0; --j) c.cells[0].push_back({data[j]});
        for (int j = t; j < n; ++j) c.cells[1].push_back({data[j]});
        c.bindings = {t == 0 ? PointerBinding::null() : PointerBinding::cell(0, 0),
                      t == n ? PointerBinding::null() : PointerBinding::cell(1, 0)};
        sink(c);
      }
    });
  }
}

// --- training policies -------------------------------------------------------

// The scalar-carrying list scans blow up at the longest inputs: the full
// product multiplies every data vector by every scalar value, and the flood
// of near-identical words pins length-specific states into the hypothesis.
// Training keeps every short input and every fourth of the longest ones; the
// survivors still reach each pointer placement.

void train_list_find(int max_cells, int lo, int hi, const ConfigSink& sink) {
  int idx = 0;
  for (int n = 1; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_sorted_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      if (n >= 4 && (idx++ % 4) != 0) return;
      for (int k = lo; k <= hi; ++k) {
        ProgramConfig c;
        c.scalar_values = {k};
        c.cells = {cells1(data)};
        for (int cur = 0;; ++cur) {
          c.bindings = {PointerBinding::cell(0, 0),
                        cur == n ? PointerBinding::null() : PointerBinding::cell(0, cur)};
          sink(c);
          if (cur == n || data[cur] >= k) break;
        }
      }
    });
  }
}

void train_list_init(int max_cells, int lo, int hi, const ConfigSink& sink) {
  int idx = 0;
  for (int n = 0; n <= max_cells; ++n) {
    std::vector<int> scratch;
    each_vector(n, lo, hi, scratch, [&](const std::vector<int>& data) {
      if (n >= 3 && (idx++ % 4) != 0) return;
      for (int v = lo; v <= hi; ++v) {
        ProgramConfig c;
        c.scalar_values = {v};
        for (int cur = 0;; ++cur) {
          c.cells = {{}};
          for (int j = 0; j < n; ++j) c.cells[0].push_back({j < cur ? v : data[j]});
          c.bindings = {n == 0 ? PointerBinding::null() : PointerBinding::cell(0, 0),
                        cur == n ? PointerBinding::null() : PointerBinding::cell(0, cur)};
          sink(c);
          if (cur == n) break;
        }
      }
    });
  }
}

// --- sessions ---------------------------------------------------------------

std::shared_ptr<const Session> make_array_find_session() {
  auto s = base("array-find");
  s->structures = {{StructureDecl::Kind::Array, "a", ""}};
  s->pointers = {"i"};
  s->domains = {{PointerDomain::Kind::Index, 0, false}};
  s->scalars = {"k"};
  s->y_count = 1;
  s->nil_cell = false;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_array_copy_session() {
  auto s = base("array-copy");
  s->structures = {{StructureDecl::Kind::Array, "a", ""}};
  s->pointers = {"i"};
  s->domains = {{PointerDomain::Kind::Index, 0, false}};
  s->y_count = 1;
  s->arity = 2;
  s->nil_cell = false;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_ins_sort_session() {
  auto s = base("ins-sort-inner");
  s->structures = {{StructureDecl::Kind::Array, "a", ""}};
  s->pointers = {"j"};
  s->domains = {{PointerDomain::Kind::Index, 0, true}};
  s->scalars = {"key"};
  s->y_count = 2;
  s->nil_cell = false;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_sel_sort_session() {
  auto s = base("sel-sort-inner");
  s->structures = {{StructureDecl::Kind::Array, "a", ""}};
  s->pointers = {"i", "j", "min"};
  s->domains = {{PointerDomain::Kind::Index, 0, false},
                {PointerDomain::Kind::Index, 0, false},
                {PointerDomain::Kind::Index, 0, false}};
  s->y_count = 2;
  s->nil_cell = false;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_list_find_session() {
  auto s = base("list-find");
  s->structures = {{StructureDecl::Kind::List, "list", "head"}};
  s->pointers = {"head", "cur"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Free, 0, false}};
  s->scalars = {"k"};
  s->y_count = 2;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_list_insert_session() {
  auto s = base("list-insert");
  s->structures = {{StructureDecl::Kind::List, "list", "head"}};
  s->pointers = {"head", "prev"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Free, 0, false}};
  s->scalars = {"k"};
  s->y_count = 2;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_list_init_session() {
  auto s = base("list-init");
  s->structures = {{StructureDecl::Kind::List, "list", "head"}};
  s->pointers = {"head", "cur"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Free, 0, false}};
  s->scalars = {"v"};
  s->y_count = 1;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_list_max_session() {
  auto s = base("list-max");
  s->structures = {{StructureDecl::Kind::List, "list", "head"}};
  s->pointers = {"head", "cur"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Free, 0, false}};
  s->scalars = {"m"};
  s->y_count = 1;
  s->finalize();
  return s;
}

std::shared_ptr<const Session> make_list_reverse_session() {
  auto s = base("list-reverse");
  s->structures = {{StructureDecl::Kind::List, "rev", "rev"},
                   {StructureDecl::Kind::List, "cur", "cur"}};
  s->pointers = {"rev", "cur"};
  s->domains = {{PointerDomain::Kind::Head, 0, false},
                {PointerDomain::Kind::Head, 1, false}};
  s->y_count = 2;
  s->finalize();
  return s;
}

}  // namespace

const std::vector<Fixture>& all_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> fs;
    fs.push_back({"array-find", make_array_find_session(), trace_array_find, {}, 4, 8, false});
    fs.push_back({"array-copy", make_array_copy_session(), trace_array_copy, {}, 4, 10, false});
    fs.push_back({"ins-sort-inner", make_ins_sort_session(), trace_ins_sort, {}, 5, 23, true});
    fs.push_back({"sel-sort-inner", make_sel_sort_session(), trace_sel_sort, {}, 5, 40, true});
    fs.push_back({"list-find", make_list_find_session(), trace_list_find, train_list_find, 4, 15, true});
    fs.push_back({"list-insert", make_list_insert_session(), trace_list_insert, {}, 4, 20, false});
    fs.push_back({"list-init", make_list_init_session(), trace_list_init, train_list_init, 4, 10, true});
    fs.push_back({"list-max", make_list_max_session(), trace_list_max, {}, 4, 14, true});
    fs.push_back({"list-reverse", make_list_reverse_session(), trace_list_reverse, {}, 4, 18, false});
    return fs;
  }();
  return fixtures;
}

const Fixture* find_fixture(const std::string& name) {
  for (const Fixture& f : all_fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

// --- sorted-scan example ----------------------------------------------------

std::shared_ptr<const Session> sorted_scan_session() {
  static const auto s = [] {
    auto s = base("sorted-scan");
    s->structures = {{StructureDecl::Kind::List, "list", "head"}};
    s->pointers = {"head", "i"};
    s->domains = {{PointerDomain::Kind::Head, 0, false},
                  {PointerDomain::Kind::Free, 0, false}};
    s->y_count = 2;
    s->nil_cell = false;
    s->finalize();
    return std::shared_ptr<const Session>(s);
  }();
  return s;
}

std::shared_ptr<const Session> sorted_scan_index_session() {
  static const auto s = [] {
    auto s = base("sorted-scan-index");
    s->structures = {{StructureDecl::Kind::List, "list", "head"}};
    s->pointers = {"head", "i"};
    s->domains = {{PointerDomain::Kind::Head, 0, false},
                  {PointerDomain::Kind::Index, 0, false}};
    s->y_count = 2;
    s->nil_cell = false;
    s->finalize();
    return std::shared_ptr<const Session>(s);
  }();
  return s;
}

Qda sorted_scan_qda() {
  auto s = sorted_scan_session();
  auto u = s->universe;
  const uint32_t H = s->pointer_bit(0), I = s->pointer_bit(1);

  Qda a;
  a.session = s;
  a.states.resize(7);
  for (auto& q : a.states) q.out = DataFormula::bottom(u);
  a.states[4].out = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  a.states[5].out = DataFormula::top(u);

  auto& st = a.states;
  st[0].next[lt(H)] = 1;
  st[0].next[lt(H, 0)] = 2;
  st[0].next[lt(H, 1)] = 5;
  st[0].next[lt(H | I)] = 5;
  st[0].next[lt(H | I, 0)] = 5;
  st[0].next[lt(H | I, 1)] = 5;

  st[1].next[lt(0)] = 1;
  st[1].next[lt(0, 0)] = 2;
  st[1].next[lt(0, 1)] = 5;
  st[1].next[lt(I)] = 5;
  st[1].next[lt(I, 0)] = 5;
  st[1].next[lt(I, 1)] = 5;

  // a blank right after y1 drops into state 6, which is stuck: only variable
  // pairs sitting on adjacent cells are constrained
  st[2].next[lt(0)] = 6;
  st[2].next[lt(0, 1)] = 3;
  st[2].next[lt(I)] = 5;
  st[2].next[lt(I, 1)] = 4;

  st[3].next[lt(0)] = 3;
  st[3].next[lt(I)] = 4;

  st[4].next[lt(0)] = 4;

  for (const Letter& l : full_alphabet(*s)) st[5].next[l] = 5;

  return a;
}

Qda sorted_scan_elastic_qda() {
  Qda a = sorted_scan_qda();
  a.states[2].next[lt(0)] = 2; // the blank now waits in place
  a.states.pop_back();         // state 6 is unreachable, drop it
  return a;
}

LogicFormula sorted_scan_list_invariant() {
  auto u = sorted_scan_session()->universe;
  Guard g;
  g.atoms = {StructAtom::reach(AtomRef::ptr(0), AtomRef::y(0), false),
             StructAtom::reach(AtomRef::y(0), AtomRef::y(1), false),
             StructAtom::reach(AtomRef::y(1), AtomRef::ptr(1), false)};
  DataFormula body = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  return LogicFormula::conj(
      {LogicFormula::fact_atom(StructAtom::reach(AtomRef::ptr(0), AtomRef::ptr(1), false)),
       LogicFormula::forall(std::move(g), std::move(body))});
}

LogicFormula sorted_scan_array_invariant() {
  auto u = sorted_scan_session()->universe;
  Guard g;
  g.atoms = {StructAtom::reach(AtomRef::y(0), AtomRef::y(1), false),
             StructAtom::reach(AtomRef::y(1), AtomRef::ptr(1), false)};
  DataFormula body = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  return LogicFormula::forall(std::move(g), std::move(body));
}

// --- parity twins -----------------------------------------------------------

std::shared_ptr<const Session> parity_session() {
  static const auto s = [] {
    auto s = base("parity");
    s->structures = {{StructureDecl::Kind::List, "list", ""}};
    s->y_count = 2;
    s->nil_cell = false;
    s->finalize();
    return std::shared_ptr<const Session>(s);
  }();
  return s;
}

std::pair<Qda, Qda> parity_twins() {
  auto s = parity_session();
  auto u = s->universe;

  Qda a;
  a.session = s;
  a.states.resize(8);
  for (auto& q : a.states) q.out = DataFormula::bottom(u);
  a.states[4].out = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  a.states[6].out = DataFormula::top(u);

  auto& st = a.states;
  st[0].next[lt(0)] = 1;
  st[0].next[lt(0, 0)] = 5;
  st[0].next[lt(0, 1)] = 7;
  st[1].next[lt(0)] = 0;
  st[1].next[lt(0, 0)] = 2;
  st[1].next[lt(0, 1)] = 7;
  st[2].next[lt(0)] = 3;
  st[2].next[lt(0, 1)] = 6;
  st[3].next[lt(0)] = 2;
  st[3].next[lt(0, 1)] = 4;
  st[4].next[lt(0)] = 4;
  st[5].next[lt(0)] = 5;
  st[5].next[lt(0, 1)] = 6;
  st[6].next[lt(0)] = 6;
  st[7].next[lt(0)] = 7;
  st[7].next[lt(0, 0)] = 6;

  Qda b = a;
  b.states[3].next[lt(0)] = 5; // give up on the pair after one extra blank

  return {std::move(a), std::move(b)};
}

// --- list-find golden machine -----------------------------------------------

Qda list_find_golden() {
  auto s = find_fixture("list-find")->session;
  auto u = s->universe;
  const uint32_t N = s->nil_bit(), H = s->pointer_bit(0), C = s->pointer_bit(1);

  DataFormula sorted = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  DataFormula first_below = sorted;
  first_below.require(Term::reg(0), RelLt, Term::scal(0));
  DataFormula both_below = first_below;
  both_below.require(Term::reg(1), RelLt, Term::scal(0));

  Qda a;
  a.session = s;
  a.states.resize(15);
  for (auto& q : a.states) q.out = DataFormula::bottom(u);
  a.states[9].out = sorted;
  a.states[11].out = first_below;
  a.states[13].out = both_below;

  auto& st = a.states;
  // cur alive: the nil cell carries nothing but nil
  st[0].next[lt(N)] = 1;
  // cur already fell off the list
  st[0].next[lt(N | C)] = 2;

  st[1].next[lt(H, 0)] = 4;
  st[1].next[lt(H)] = 6;
  st[1].next[lt(H | C, 0)] = 3;
  st[1].next[lt(H | C)] = 14;

  st[2].next[lt(H)] = 8;
  st[2].next[lt(H, 0)] = 7;

  st[3].next[lt(0)] = 3;
  st[3].next[lt(0, 1)] = 9;

  st[4].next[lt(0)] = 4;
  st[4].next[lt(0, 1)] = 10;
  st[4].next[lt(C)] = 12;
  st[4].next[lt(C, 1)] = 11;

  st[5].next[lt(0)] = 5;
  st[5].next[lt(0, 0)] = 3;

  st[6].next[lt(0)] = 6;
  st[6].next[lt(0, 0)] = 4;
  st[6].next[lt(C, 0)] = 3;
  st[6].next[lt(C)] = 5;

  st[7].next[lt(0)] = 7;
  st[7].next[lt(0, 1)] = 13;

  st[8].next[lt(0)] = 8;
  st[8].next[lt(0, 0)] = 7;

  st[9].next[lt(0)] = 9;

  st[10].next[lt(0)] = 10;
  st[10].next[lt(C)] = 13;

  st[11].next[lt(0)] = 11;

  st[12].next[lt(0)] = 12;
  st[12].next[lt(0, 1)] = 11;

  st[13].next[lt(0)] = 13;

  st[14].next[lt(0)] = 14;
  st[14].next[lt(0, 0)] = 3;

  return a;
}

LogicFormula list_find_invariant() {
  auto u = find_fixture("list-find")->session->universe;
  AtomRef head = AtomRef::ptr(0), cur = AtomRef::ptr(1);
  AtomRef y1 = AtomRef::y(0), y2 = AtomRef::y(1);

  DataFormula sorted = DataFormula::top(u).require(Term::reg(0), RelLe, Term::reg(1));
  DataFormula below = DataFormula::top(u).require(Term::reg(0), RelLt, Term::scal(0));

  Guard sorted_g;
  sorted_g.atoms = {StructAtom::reach(head, y1, false), StructAtom::reach(y1, y2, false)};
  Guard anywhere_g;
  anywhere_g.atoms = {StructAtom::reach(head, y1, false)};
  Guard before_cur_g;
  before_cur_g.atoms = {StructAtom::reach(head, y1, false),
                        StructAtom::reach(y1, cur, true)};

  return LogicFormula::conj(
      {LogicFormula::forall(std::move(sorted_g), sorted),
       LogicFormula::disj(
           {LogicFormula::conj({LogicFormula::fact_atom(StructAtom::null(cur)),
                                LogicFormula::forall(std::move(anywhere_g), below)}),
            LogicFormula::conj(
                {LogicFormula::fact_atom(StructAtom::reach(head, cur, false)),
                 LogicFormula::forall(std::move(before_cur_g), below)})})});
}

}  // namespace qda
