#include <doctest.h>

#include <set>
#include <vector>

#include "qda/lattice.hpp"

using namespace qda;

namespace {

// Truth-table oracle: every assignment of the universe's terms to values in
// [lo, hi]. The lattice claims leq is implication and join is the least upper
// bound; these helpers decide both questions by brute force so the algebraic
// implementation has something independent to answer to.
template <typename Fn>
void each_assignment(const AtomUniverse& u, int lo, int hi, const Fn& fn) {
  std::vector<int> v(u.terms.size(), lo);
  for (;;) {
    fn(v);
    size_t i = 0;
    while (i < v.size() && ++v[i] > hi) v[i++] = lo;
    if (i == v.size()) break;
  }
}

bool oracle_implies(const DataFormula& a, const DataFormula& b) {
  bool ok = true;
  each_assignment(*a.universe(), 0, 3, [&](const std::vector<int>& v) {
    if (a.eval(v) && !b.eval(v)) ok = false;
  });
  return ok;
}

bool oracle_equal(const DataFormula& a, const DataFormula& b) {
  return oracle_implies(a, b) && oracle_implies(b, a);
}

// All distinct formulas over the universe: saturate every raw constraint
// mask. Feasible only for small universes; two terms give one pair and 64
// masks, three terms give three pairs.
std::vector<DataFormula> all_formulas(const std::shared_ptr<const AtomUniverse>& u) {
  const Rel rels[] = {RelLt, RelGt, RelLe, RelGe, RelEq, RelNe};
  std::vector<DataFormula> out;
  std::set<size_t> seen;
  size_t npairs = u->pairs.size();
  size_t total = (size_t)1 << (6 * npairs);
  for (size_t mask = 0; mask < total; ++mask) {
    DataFormula f = DataFormula::top(u);
    for (size_t p = 0; p < npairs; ++p) {
      const Term& a = u->terms[u->pairs[p].first];
      const Term& b = u->terms[u->pairs[p].second];
      for (int r = 0; r < 6; ++r)
        if (mask >> (6 * p + r) & 1) f.require(a, rels[r], b);
    }
    if (seen.insert(f.hash()).second) out.push_back(f);
  }
  // hash collisions would merge distinct formulas; catch that here
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) REQUIRE_FALSE(out[i] == out[j]);
  return out;
}

}  // namespace

TEST_CASE("saturation closure") {
  auto u = AtomUniverse::make(2, 1, {});
  Term y1 = Term::reg(0), y2 = Term::reg(1);

  SUBCASE("equality implies both non-strict orders") {
    DataFormula f = DataFormula::top(u).require(y1, RelEq, y2);
    CHECK(DataFormula::leq(f, DataFormula::top(u).require(y1, RelLe, y2)));
    CHECK(DataFormula::leq(f, DataFormula::top(u).require(y2, RelLe, y1)));
    CHECK(oracle_equal(f, DataFormula::top(u).require(y1, RelEq, y2)));
  }

  SUBCASE("empty literal set is top") {
    CHECK(DataFormula::top(u).is_top());
    CHECK_FALSE(DataFormula::top(u).is_bottom());
  }

  SUBCASE("strict cycle collapses to bottom") {
    DataFormula f = DataFormula::top(u).require(y1, RelLt, y2).require(y2, RelLe, y1);
    CHECK(f.is_bottom());
  }

  SUBCASE("le plus ne strengthens to lt") {
    DataFormula f = DataFormula::top(u).require(y1, RelLe, y2).require(y1, RelNe, y2);
    CHECK(f == DataFormula::top(u).require(y1, RelLt, y2));
  }

  SUBCASE("transitive chain over three terms") {
    auto u3 = AtomUniverse::make(3, 1, {});
    DataFormula f = DataFormula::top(u3)
                        .require(Term::reg(0), RelLt, Term::reg(1))
                        .require(Term::reg(1), RelLe, Term::reg(2));
    CHECK(DataFormula::leq(
        f, DataFormula::top(u3).require(Term::reg(0), RelLt, Term::reg(2))));
  }
}

TEST_CASE("leq is implication") {
  auto u = AtomUniverse::make(2, 1, {});
  Term y1 = Term::reg(0), y2 = Term::reg(1);

  CHECK(DataFormula::leq(DataFormula::top(u).require(y1, RelLt, y2),
                         DataFormula::top(u).require(y1, RelLe, y2)));
  CHECK(DataFormula::leq(DataFormula::bottom(u), DataFormula::top(u).require(y1, RelEq, y2)));
  CHECK(DataFormula::leq(DataFormula::bottom(u), DataFormula::top(u)));
  CHECK_FALSE(DataFormula::leq(DataFormula::top(u),
                               DataFormula::top(u).require(y1, RelLe, y2)));
}

TEST_CASE("join examples") {
  auto u = AtomUniverse::make(2, 1, {});
  Term y1 = Term::reg(0), y2 = Term::reg(1);
  DataFormula lt = DataFormula::top(u).require(y1, RelLt, y2);
  DataFormula eq = DataFormula::top(u).require(y1, RelEq, y2);
  DataFormula le = DataFormula::top(u).require(y1, RelLe, y2);

  CHECK(DataFormula::join(lt, eq) == le);
  CHECK(DataFormula::join(DataFormula::bottom(u), lt) == lt);
  CHECK(DataFormula::join(lt, DataFormula::bottom(u)) == lt);
  CHECK(DataFormula::join(le, le) == le);
}

TEST_CASE("eval") {
  auto u = AtomUniverse::make(2, 1, {"k"});
  Term y1 = Term::reg(0), y2 = Term::reg(1), k = Term::scal(0);

  // term order in the universe: d(y1), d(y2), k
  CHECK(DataFormula::top(u).require(y1, RelLe, y2).eval({5, 7, 0}));
  CHECK_FALSE(DataFormula::bottom(u).eval({0, 0, 0}));
  CHECK_FALSE(DataFormula::top(u).require(y1, RelLt, k).eval({4, 0, 4}));
  CHECK(DataFormula::top(u).require(y1, RelLt, k).eval({3, 0, 4}));
}

TEST_CASE("abstraction is the strongest true formula") {
  auto u = AtomUniverse::make(2, 1, {});

  SUBCASE("equal values") {
    DataFormula f = DataFormula::abstract_values(u, {2, 2});
    CHECK(f == DataFormula::top(u).require(Term::reg(0), RelEq, Term::reg(1)));
  }

  SUBCASE("ordered values") {
    DataFormula f = DataFormula::abstract_values(u, {1, 3});
    CHECK(f == DataFormula::top(u).require(Term::reg(0), RelLt, Term::reg(1)));
  }

  SUBCASE("empty universe") {
    auto u0 = AtomUniverse::make(0, 1, {});
    CHECK(DataFormula::abstract_values(u0, {}).is_top());
  }

  SUBCASE("adjoint laws over all small assignments") {
    std::vector<DataFormula> fs = all_formulas(u);
    each_assignment(*u, 0, 3, [&](const std::vector<int>& v) {
      DataFormula a = DataFormula::abstract_values(u, v);
      CHECK(a.eval(v));
      for (const DataFormula& f : fs)
        if (f.eval(v)) CHECK(DataFormula::leq(a, f));
    });
  }
}

TEST_CASE("lattice laws over a two-term universe") {
  auto u = AtomUniverse::make(2, 1, {});
  std::vector<DataFormula> fs = all_formulas(u);
  // 1 pair, 4 satisfiable saturated masks (lt, gt, le, ge, eq, ne, top...)
  // plus bottom; just pin the count so a saturation regression is loud
  CHECK(fs.size() == 8);

  for (const DataFormula& a : fs) {
    CHECK(DataFormula::leq(a, a));
    for (const DataFormula& b : fs) {
      CHECK(DataFormula::leq(a, b) == oracle_implies(a, b));
      if (DataFormula::leq(a, b) && DataFormula::leq(b, a)) CHECK(a == b);

      DataFormula j = DataFormula::join(a, b);
      CHECK(DataFormula::leq(a, j));
      CHECK(DataFormula::leq(b, j));
      for (const DataFormula& c : fs)
        if (DataFormula::leq(a, c) && DataFormula::leq(b, c))
          CHECK(DataFormula::leq(j, c));
    }
  }
}

TEST_CASE("canonicity: distinct values are semantically distinct") {
  auto u = AtomUniverse::make(2, 1, {"k"});
  std::vector<DataFormula> fs = all_formulas(u);
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j)
      CHECK_FALSE(oracle_equal(fs[i], fs[j]));
}

TEST_CASE("tuple components compare within their own index") {
  auto u = AtomUniverse::make(2, 2, {});
  Term a0 = Term::reg(0, 0), a1 = Term::reg(0, 1);
  Term b0 = Term::reg(1, 0), b1 = Term::reg(1, 1);

  // components of one variable are comparable, as are equal components
  // across variables; mixed components across variables are not
  bool swapped = false;
  CHECK(u->pair_slot(u->term_index(a0), u->term_index(a1), swapped) >= 0);
  CHECK(u->pair_slot(u->term_index(a0), u->term_index(b0), swapped) >= 0);
  CHECK(u->pair_slot(u->term_index(a1), u->term_index(b1), swapped) >= 0);
  CHECK(u->pair_slot(u->term_index(a0), u->term_index(b1), swapped) < 0);
}

TEST_CASE("render and parse round-trip") {
  auto u = AtomUniverse::make(2, 1, {"k"});
  DataFormula f = DataFormula::top(u)
                      .require(Term::reg(0), RelLe, Term::reg(1))
                      .require(Term::reg(0), RelLt, Term::scal(0));
  std::string text = f.render();
  auto parsed = DataFormula::parse(u, text);
  REQUIRE(parsed.has_value());
  CHECK(*parsed == f);

  CHECK(DataFormula::top(u).render() == "true");
  CHECK(DataFormula::bottom(u).render() == "false");
  CHECK(DataFormula::parse(u, "false")->is_bottom());
  CHECK(DataFormula::parse(u, "d(y1) <= d(y2)").has_value());
  CHECK_FALSE(DataFormula::parse(u, "d(y9) <= d(y2)").has_value());
}
