#include <doctest.h>

#include <algorithm>
#include <random>

#include "moore_util.hpp"
#include "qda/elastic.hpp"
#include "qda/fixtures.hpp"
#include "qda/learner.hpp"

using namespace qda;
using namespace moore_util;

namespace {

// wire a Qda up as an exact Moore teacher over its own useful letters
struct QdaOracle {
  Qda target;
  std::vector<Letter> alpha;

  explicit QdaOracle(Qda t) : target(std::move(t)), alpha(target.alphabet()) {
    std::sort(alpha.begin(), alpha.end());
  }

  SymbolicWord to_word(const std::vector<int>& w) const {
    SymbolicWord sw;
    for (int a : w) sw.push_back(alpha[a]);
    return sw;
  }
  Qda to_qda(const MooreHypothesis<DataFormula>& h) const {
    Qda q;
    q.session = target.session;
    q.initial = h.initial;
    q.states.resize(h.outputs.size());
    for (size_t i = 0; i < h.outputs.size(); ++i) {
      q.states[i].out = h.outputs[i];
      for (size_t a = 0; a < alpha.size(); ++a) q.states[i].next[alpha[a]] = h.next[i][a];
    }
    return q;
  }
  MooreTeacher<DataFormula> teacher() const {
    MooreTeacher<DataFormula> t;
    t.alphabet_size = (int)alpha.size();
    t.membership = [this](const std::vector<int>& w) { return target.output_of(to_word(w)); };
    t.equivalence =
        [this](const MooreHypothesis<DataFormula>& h) -> std::optional<std::vector<int>> {
      Qda q = to_qda(h);
      InclusionResult fwd = included(q, target);
      InclusionResult bwd = included(target, q);
      const SymbolicWord* w = nullptr;
      if (!fwd.holds)
        w = &fwd.witness;
      else if (!bwd.holds)
        w = &bwd.witness;
      if (!w) return std::nullopt;
      std::vector<int> out;
      for (const Letter& l : *w)
        out.push_back((int)(std::lower_bound(alpha.begin(), alpha.end(), l) - alpha.begin()));
      return out;
    };
    return t;
  }
};

}  // namespace

TEST_CASE("a constant target is learned in one equivalence query") {
  IntMachine target;
  target.outputs = {42};
  target.next = {{0, 0, 0}};
  LearnStats st;
  IntMachine h = learn_moore(exact_teacher(target), &st);
  CHECK(h.outputs.size() == 1);
  CHECK(h.outputs[0] == 42);
  CHECK(st.equivalence_queries == 1);
  CHECK(st.longest_counterexample == 0);
}

TEST_CASE("the sorted-scan machine is re-learned exactly") {
  QdaOracle oracle(sorted_scan_qda());
  LearnStats st;
  MooreHypothesis<DataFormula> h = learn_moore(oracle.teacher(), &st);

  Qda learned = minimize(oracle.to_qda(h));
  Qda want = minimize(sorted_scan_qda());
  CHECK(learned.states.size() == want.states.size());
  CHECK(isomorphic(learned, want));
  // equivalence queries never exceed the minimal state count
  CHECK(st.equivalence_queries <= (long)want.states.size());
  CHECK(st.membership_queries > 0);

  SUBCASE("the run is deterministic") {
    LearnStats again;
    MooreHypothesis<DataFormula> h2 = learn_moore(oracle.teacher(), &again);
    CHECK(isomorphic(oracle.to_qda(h2), oracle.to_qda(h)));
    CHECK(again.membership_queries == st.membership_queries);
    CHECK(again.equivalence_queries == st.equivalence_queries);
    CHECK(again.longest_counterexample == st.longest_counterexample);
  }
}

TEST_CASE("random minimal machines are learned exactly") {
  std::mt19937 rng(7141);
  for (int round = 0; round < 30; ++round) {
    IntMachine target = minimize_machine(random_machine(rng, 12, 4, 3));
    LearnStats st;
    IntMachine h = learn_moore(exact_teacher(target), &st);
    REQUIRE_FALSE(first_difference(target, h).has_value());
    IntMachine hm = minimize_machine(h);
    REQUIRE(machines_isomorphic(hm, target));
    // the learned machine is already minimal: rows are pairwise distinct
    REQUIRE(h.outputs.size() == target.outputs.size());
    REQUIRE(st.equivalence_queries <= (long)target.outputs.size());
  }
}

TEST_CASE("a lying equivalence oracle is reported") {
  IntMachine target;
  target.outputs = {0};
  target.next = {{0, 0}};
  MooreTeacher<int> t = exact_teacher(target);
  t.equivalence = [](const IntMachine&) {
    return std::optional<std::vector<int>>(std::vector<int>{0});
  };
  LearnStats st;
  CHECK_THROWS_AS(learn_moore(t, &st), std::runtime_error);
}

TEST_CASE("counterexample prefixes land in the table") {
  // target distinguishes words by whether letter 1 was ever read; an exact
  // teacher needs at most two equivalence queries and the second hypothesis
  // must incorporate the counterexample
  IntMachine target;
  target.outputs = {0, 1};
  target.next = {{0, 1}, {1, 1}};
  LearnStats st;
  IntMachine h = learn_moore(exact_teacher(target), &st);
  CHECK(h.outputs.size() == 2);
  CHECK_FALSE(first_difference(target, h).has_value());
  CHECK(st.equivalence_queries <= 2);
  CHECK(st.longest_counterexample <= 1);
}
