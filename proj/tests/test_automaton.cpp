#include <doctest.h>

#include <functional>
#include <vector>

#include "qda/automaton.hpp"
#include "qda/fixtures.hpp"

using namespace qda;

namespace {

Letter lt(uint32_t ptrs, int y = -1) { return Letter{ptrs, (int8_t)y}; }

Cell cell(uint32_t ptrs, int data, int y = -1) { return Cell{lt(ptrs, y), {data}}; }

// Every valid symbolic word up to max_len whose letters are drawn from the
// union of the two machines' alphabets. The inclusion check claims to cover
// exactly these words, so the oracle walks them explicitly.
template <typename Fn>
void each_valid_word(const Session& s, const std::vector<Letter>& alpha, int max_len,
                     const Fn& fn) {
  SymbolicWord w;
  std::function<void()> rec = [&] {
    if (is_valid_word(s, w)) fn(w);
    if ((int)w.size() == max_len) return;
    for (const Letter& l : alpha) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

// Implication of outputs decided by truth tables rather than the lattice.
bool oracle_leq(const DataFormula& a, const DataFormula& b) {
  const AtomUniverse& u = *a.universe();
  std::vector<int> v(u.terms.size(), 0);
  for (;;) {
    if (a.eval(v) && !b.eval(v)) return false;
    size_t i = 0;
    while (i < v.size() && ++v[i] > 3) v[i++] = 0;
    if (i == v.size()) return true;
  }
}

}  // namespace

TEST_CASE("runs on the sorted-scan machine") {
  Qda a = sorted_scan_qda();
  const Session& s = *a.session;
  const uint32_t H = s.pointer_bit(0), I = s.pointer_bit(1);

  CHECK(a.run({}) == 0);
  CHECK(a.run({lt(H, 0), lt(0, 1), lt(I)}) == 4);
  CHECK_FALSE(a.run({lt(I, 0)}).has_value());
  CHECK(a.output_of({lt(I, 0)}).is_bottom());
}

TEST_CASE("valuation acceptance evaluates the final formula") {
  Qda a = sorted_scan_qda();
  const Session& s = *a.session;
  const uint32_t H = s.pointer_bit(0), I = s.pointer_bit(1);

  CHECK(a.accepts_valuation({cell(H, 5, 0), cell(0, 7, 1), cell(I, 3)}));
  CHECK_FALSE(a.accepts_valuation({cell(H, 7, 0), cell(0, 5, 1), cell(I, 3)}));
  // repeated variable: no machine edge reads y1 twice, so the run dies
  CHECK_FALSE(a.accepts_valuation({cell(H, 5, 0), cell(0, 7, 0), cell(I, 3)}));
}

TEST_CASE("data word acceptance quantifies over all placements") {
  Qda a = sorted_scan_qda();
  const Session& s = *a.session;
  const uint32_t H = s.pointer_bit(0), I = s.pointer_bit(1);

  // i right after the sorted prefix; all twelve placements must pass
  DataWord sorted = {cell(H, 1), cell(I, 2), cell(0, 2), cell(0, 3)};
  CHECK(structure_valuations(s, sorted, s.y_count).size() == 12);
  CHECK(a.accepts(sorted));

  DataWord inverted = {cell(H, 5), cell(I, 3), cell(0, 0), cell(0, 0)};
  CHECK_FALSE(a.accepts(inverted));

  // shorter than the variable count: no placement, vacuously accepted
  DataWord tiny = {cell(H | I, 9)};
  CHECK(structure_valuations(s, tiny, s.y_count).empty());
  CHECK(a.accepts(tiny));
}

TEST_CASE("minimization") {
  Qda a = sorted_scan_qda();

  SUBCASE("the hand-built machine is already minimal") {
    // six live states; the stuck state merges into the implicit sink
    CHECK(minimize(a).states.size() == 6);
  }

  SUBCASE("idempotence") {
    Qda m = minimize(a);
    CHECK(isomorphic(m, minimize(m)));
    Qda e = sorted_scan_elastic_qda();
    CHECK(isomorphic(minimize(e), minimize(minimize(e))));
  }

  SUBCASE("duplicated states collapse") {
    // duplicate state 3 and reroute one edge into the copy
    Qda b = a;
    int clone = (int)b.states.size();
    b.states.push_back(b.states[3]);
    b.states[2].next[lt(0, 1)] = clone;
    CHECK_FALSE(isomorphic(a, b));
    CHECK(isomorphic(minimize(a), minimize(b)));
  }

  SUBCASE("outputs survive minimization on every short valid word") {
    Qda m = minimize(a);
    each_valid_word(*a.session, a.alphabet(), 4, [&](const SymbolicWord& w) {
      CHECK(a.output_of(w) == m.output_of(w));
    });
  }
}

TEST_CASE("inclusion order on automaton outputs") {
  Qda a = sorted_scan_qda();
  Qda e = sorted_scan_elastic_qda();

  CHECK(included(a, a).holds);
  CHECK(included(a, e).holds);

  InclusionResult rev = included(e, a);
  CHECK_FALSE(rev.holds);
  CHECK(is_valid_word(*a.session, rev.witness));
  CHECK_FALSE(oracle_leq(e.output_of(rev.witness), a.output_of(rev.witness)));

  SUBCASE("a top state above everything") {
    Qda top = a;
    for (auto& st : top.states) {
      st.out = DataFormula::top(a.session->universe);
      for (const Letter& l : a.alphabet()) st.next[l] = 0;
    }
    CHECK(included(a, top).holds);
    CHECK_FALSE(included(top, a).holds);
  }

  SUBCASE("verdict matches the word-by-word oracle") {
    std::vector<Letter> alpha = a.alphabet();
    auto brute = [&](const Qda& x, const Qda& y) {
      bool all = true;
      each_valid_word(*a.session, alpha, 5, [&](const SymbolicWord& w) {
        if (!oracle_leq(x.output_of(w), y.output_of(w))) all = false;
      });
      return all;
    };
    CHECK(brute(a, e) == included(a, e).holds);
    CHECK(brute(e, a) == included(e, a).holds);
    CHECK(brute(a, a));
  }
}

TEST_CASE("the valuation twins differ symbolically but not on data words") {
  auto [a, b] = parity_twins();
  const Session& s = *a.session;

  // the divergence is one-sided: a sits strictly below b on valuation words
  CHECK(included(a, b).holds);
  CHECK_FALSE(included(b, a).holds);
  CHECK_FALSE(isomorphic(minimize(a), minimize(b)));

  // same data-word language on every word up to length 4 over {0,1,2}
  std::function<void(DataWord&)> rec = [&](DataWord& w) {
    CHECK(a.accepts(w) == b.accepts(w));
    if (w.size() == 4) return;
    for (int d = 0; d <= 2; ++d) {
      w.push_back(cell(0, d));
      rec(w);
      w.pop_back();
    }
  };
  DataWord w;
  rec(w);
  (void)s;
}

TEST_CASE("canonicalization over configuration encodings") {
  const Fixture* f = find_fixture("list-find");
  const Session& s = *f->session;
  const uint32_t N = s.nil_bit(), H = s.pointer_bit(0), C = s.pointer_bit(1);

  // one state accepting everything, including structurally impossible words
  Qda loose;
  loose.session = f->session;
  loose.states.resize(1);
  loose.states[0].out = DataFormula::top(s.universe);
  for (uint32_t m = 0; m < (1u << s.letter_names().size()); ++m)
    for (int y = -1; y < s.y_count; ++y) loose.states[0].next[lt(m, y)] = 0;

  Qda canon = canonicalize_encodings(loose);
  CHECK(canon.states.size() > 1);

  // well-formed encodings keep their output
  CHECK_FALSE(canon.output_of({lt(N | C), lt(H, 0), lt(0, 1)}).is_bottom());
  // nil cell missing, duplicated, or late: all dead
  CHECK(canon.output_of({lt(H, 0), lt(0, 1)}).is_bottom());
  CHECK(canon.output_of({lt(N | C), lt(N), lt(H, 0), lt(0, 1)}).is_bottom());
  // head bit on a later cell only
  CHECK(canon.output_of({lt(N | C), lt(0, 0), lt(H, 1)}).is_bottom());
  // a variable on the nil cell never happens
  CHECK(canon.output_of({lt(N | C, 0), lt(H, 1)}).is_bottom());

  SUBCASE("scalar cells sit between nil and the structure") {
    auto ss = Session::make("canon-scalar");
    ss->structures = {{StructureDecl::Kind::List, "list", "head"}};
    ss->pointers = {"head"};
    ss->domains = {{PointerDomain::Kind::Head, 0, false}};
    ss->scalars = {"k"};
    ss->y_count = 1;
    ss->finalize();
    const uint32_t SN = ss->nil_bit(), SK = ss->scalar_bit(0), SH = ss->pointer_bit(0);

    Qda sloose;
    sloose.session = ss;
    sloose.states.resize(1);
    sloose.states[0].out = DataFormula::top(ss->universe);
    for (uint32_t m = 0; m < (1u << ss->letter_names().size()); ++m)
      for (int y = -1; y < ss->y_count; ++y) sloose.states[0].next[lt(m, y)] = 0;
    Qda scanon = canonicalize_encodings(sloose);

    CHECK_FALSE(scanon.output_of({lt(SN), lt(SK), lt(SH, 0)}).is_bottom());
    // scalar cell missing, doubled, or after the structure
    CHECK(scanon.output_of({lt(SN), lt(SH, 0)}).is_bottom());
    CHECK(scanon.output_of({lt(SN), lt(SK), lt(SK), lt(SH, 0)}).is_bottom());
    CHECK(scanon.output_of({lt(SN), lt(SH, 0), lt(SK)}).is_bottom());
    // a variable on the scalar cell never happens
    CHECK(scanon.output_of({lt(SN), lt(SK, 0), lt(SH)}).is_bottom());
  }

  SUBCASE("array sessions guard their markers") {
    // array-find encodes no nil cell: words open directly with the lo marker
    const Fixture* af = find_fixture("array-find");
    const Session& as = *af->session;
    const uint32_t LO = as.low_bit(), HI = as.high_bit();
    const uint32_t I = as.pointer_bit(0);

    Qda aloose;
    aloose.session = af->session;
    aloose.states.resize(1);
    aloose.states[0].out = DataFormula::top(as.universe);
    for (uint32_t m = 0; m < (1u << as.letter_names().size()); ++m)
      for (int y = -1; y < as.y_count; ++y) aloose.states[0].next[lt(m, y)] = 0;
    Qda acanon = canonicalize_encodings(aloose);

    CHECK_FALSE(acanon.output_of({lt(LO), lt(0, 0), lt(HI | I)}).is_bottom());
    CHECK_FALSE(acanon.output_of({lt(LO), lt(I, 0), lt(HI)}).is_bottom());
    CHECK_FALSE(acanon.output_of({lt(LO), lt(0, 0), lt(0), lt(HI | I)}).is_bottom());
    // marker order and marker duplication
    CHECK(acanon.output_of({lt(HI | I), lt(0, 0), lt(LO)}).is_bottom());
    CHECK(acanon.output_of({lt(LO), lt(LO), lt(0, 0), lt(HI | I)}).is_bottom());
    // the word must close the array and place the index pointer
    CHECK(acanon.output_of({lt(LO), lt(I, 0)}).is_bottom());
    CHECK(acanon.output_of({lt(LO), lt(0, 0), lt(HI)}).is_bottom());
    // index pointers stay between the markers; this one disallows lo
    CHECK(acanon.output_of({lt(LO), lt(0, 0), lt(HI), lt(I)}).is_bottom());
    CHECK(acanon.output_of({lt(LO | I), lt(0, 0), lt(HI)}).is_bottom());
    // universal variables never sit on a marker
    CHECK(acanon.output_of({lt(LO), lt(0, 0), lt(HI, 0)}).is_bottom());
  }
}
